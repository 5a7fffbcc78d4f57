#include "oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace bsq::oracle {

std::vector<cplx> characteristic_polynomial(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<cplx> c(n + 1);
  c[0] = 1.0;
  ComplexMatrix mk(n, n);
  const ComplexMatrix id = ComplexMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = a * mk + id * c[k - 1];
    const ComplexMatrix amk = a * mk;
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += amk(i, i);
    c[k] = -tr / static_cast<double>(k);
  }
  return c;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) companion(0, static_cast<Eigen::Index>(j)) = -coeffs[j + 1] / coeffs[0];
  for (std::size_t i = 1; i < n; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (cplx& r : roots) {
    for (int it = 0; it < 3; ++it) {
      cplx p = coeffs[0];
      cplx dp = 0.0;
      for (std::size_t k = 1; k <= n; ++k) {
        dp = dp * r + p;
        p = p * r + coeffs[k];
      }
      if (std::abs(dp) == 0.0) break;
      const cplx step = p / dp;
      if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6 * (1.0 + std::abs(r))) break;
      r -= step;
    }
  }
  return roots;
}

std::vector<cplx> charpoly_eigenvalues(const ComplexMatrix& m) {
  const double scale = std::max(frobenius_norm(m), 1e-300);
  std::vector<cplx> roots = polynomial_roots(characteristic_polynomial(m * cplx(1.0 / scale)));
  for (cplx& r : roots) r *= scale;
  return roots;
}

double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  auto directed = [](const std::vector<cplx>& x, const std::vector<cplx>& y) {
    double worst = 0.0;
    for (const cplx& p : x) {
      double best = std::numeric_limits<double>::infinity();
      for (const cplx& q : y) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double pairing_distance(std::vector<cplx> a, std::vector<cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.size();
  if (n <= 8) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t i = 0; i < n && worst < best; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  std::vector<char> used(n, 0);
  double worst = 0.0;
  for (const cplx& p : a) {
    std::size_t arg = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (!used[j] && std::abs(p - b[j]) < best) {
        best = std::abs(p - b[j]);
        arg = j;
      }
    used[arg] = 1;
    worst = std::max(worst, best);
  }
  return worst;
}

cplx determinant(ComplexMatrix m) {
  const std::size_t n = m.rows();
  cplx det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
    if (m(piv, k) == cplx(0.0)) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

ComplexMatrix full_symmetrization(const ComplexMatrix& X, const ComplexMatrix& Xi, int m, int n) {
  const std::size_t dim = X.rows();
  const int len = m + n;
  ComplexMatrix sum(dim, dim);
  int count = 0;
  for (unsigned mask = 0; mask < (1u << len); ++mask) {
    if (std::popcount(mask) != m) continue;
    ComplexMatrix prod = ComplexMatrix::identity(dim);
    for (int pos = 0; pos < len; ++pos) prod = prod * ((mask >> pos) & 1u ? X : Xi);
    sum += prod;
    ++count;
  }
  return sum * cplx(1.0 / count);
}

cplx horner_plane(const std::map<std::pair<int, int>, double>& terms, cplx x, cplx xi) {
  int mx = 0;
  int nx = 0;
  for (const auto& [key, c] : terms) {
    mx = std::max(mx, key.first);
    nx = std::max(nx, key.second);
  }
  cplx outer = 0.0;
  for (int m = mx; m >= 0; --m) {
    cplx inner = 0.0;
    for (int n = nx; n >= 0; --n) {
      const auto it = terms.find({m, n});
      inner = inner * xi + (it == terms.end() ? 0.0 : it->second);
    }
    outer = outer * x + inner;
  }
  return outer;
}

cplx trapezoid_mean(const std::function<cplx(double)>& f, int M) {
  cplx s = 0.0;
  for (int j = 0; j < M; ++j) s += f(2.0 * std::numbers::pi * j / M);
  return s / static_cast<double>(M);
}

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (auto& v : m.data()) v = cplx(g(rng), g(rng));
  return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  const ComplexMatrix a = random_matrix(rng, n);
  return (a + adjoint(a)) * cplx(0.5);
}

double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

}  // namespace bsq::oracle
