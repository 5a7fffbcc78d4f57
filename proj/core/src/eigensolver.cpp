#include "bsq/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bsq/double_double.hpp"
#include "bsq/fingerprint.hpp"

namespace bsq {

namespace {

using std::abs;
using std::hypot;
using std::sqrt;

template <class Real>
using Cx = std::complex<Real>;

template <class Real>
using Mat = DenseMatrix<Cx<Real>>;

template <class Real>
Real cabs1(Cx<Real> z) {
  return abs(z.real()) + abs(z.imag());
}

template <class Real>
struct Givens {
  Real c;
  Cx<Real> s;
  Cx<Real> r;  // image of (a, b): (r, 0)
};

// Rotation G = [[c, s], [-conj(s), c]] with G (a, b)^T = (r, 0)^T.
template <class Real>
Givens<Real> make_givens(Cx<Real> a, Cx<Real> b) {
  const Real nb = abs(b);
  if (nb == 0) return {1, Cx<Real>(0), a};
  const Real na = abs(a);
  if (na == 0) return {0, std::conj(b) / nb, Cx<Real>(nb)};
  const Real r = hypot(na, nb);
  const Cx<Real> phase = a / na;
  return {na / r, phase * std::conj(b) / r, phase * r};
}

template <class Real>
void rotate_rows(Mat<Real>& H, std::size_t k, const Givens<Real>& g, std::size_t j0, std::size_t j1) {
  for (std::size_t j = j0; j < j1; ++j) {
    const Cx<Real> x = H(k, j);
    const Cx<Real> y = H(k + 1, j);
    H(k, j) = g.c * x + g.s * y;
    H(k + 1, j) = -std::conj(g.s) * x + g.c * y;
  }
}

// M <- M G^H on columns k, k+1.
template <class Real>
void rotate_cols(Mat<Real>& M, std::size_t k, const Givens<Real>& g, std::size_t i0, std::size_t i1) {
  for (std::size_t i = i0; i < i1; ++i) {
    const Cx<Real> x = M(i, k);
    const Cx<Real> y = M(i, k + 1);
    M(i, k) = g.c * x + std::conj(g.s) * y;
    M(i, k + 1) = -g.s * x + g.c * y;
  }
}

// Radix-2 diagonal balancing; returns the scaling D with A <- D^{-1} A D.
template <class Real>
std::vector<Real> balance(Mat<Real>& A) {
  const std::size_t n = A.rows();
  std::vector<Real> scale(n, 1);
  constexpr Real radix = 2;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      Real c = 0;
      Real r = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        c += cabs1(A(j, i));
        r += cabs1(A(i, j));
      }
      if (c == 0 || r == 0) continue;
      Real g = r / radix;
      Real f = 1;
      const Real s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < Real(0.95) * s) {
        converged = false;
        scale[i] *= f;
        for (std::size_t j = 0; j < n; ++j) A(i, j) /= f;
        for (std::size_t j = 0; j < n; ++j) A(j, i) *= f;
      }
    }
  }
  return scale;
}

// Householder reduction to upper Hessenberg form, accumulating Q.
template <class Real>
void hessenberg(Mat<Real>& A, Mat<Real>& Q) {
  const std::size_t n = A.rows();
  std::vector<Cx<Real>> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    Real tail = 0;
    for (std::size_t i = k + 2; i < n; ++i) tail += std::norm(A(i, k));
    if (tail == 0) continue;
    const Cx<Real> x0 = A(k + 1, k);
    const Real xnorm = sqrt(tail + std::norm(x0));
    const Real ax0 = abs(x0);
    const Cx<Real> phase = ax0 == 0 ? Cx<Real>(1) : x0 / ax0;
    const Cx<Real> alpha = -phase * xnorm;
    const std::size_t len = n - k - 1;
    v[0] = x0 - alpha;
    for (std::size_t i = 1; i < len; ++i) v[i] = A(k + 1 + i, k);
    Real vnorm2 = 0;
    for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
    const Real beta = 2 / vnorm2;

    // A <- (I - beta v v^H) A
    for (std::size_t j = k; j < n; ++j) {
      Cx<Real> s{};
      for (std::size_t i = 0; i < len; ++i) s += std::conj(v[i]) * A(k + 1 + i, j);
      s *= beta;
      for (std::size_t i = 0; i < len; ++i) A(k + 1 + i, j) -= v[i] * s;
    }
    // A <- A (I - beta v v^H), Q <- Q (I - beta v v^H)
    auto right = [&](Mat<Real>& M) {
      for (std::size_t i = 0; i < n; ++i) {
        Cx<Real> s{};
        for (std::size_t j = 0; j < len; ++j) s += M(i, k + 1 + j) * v[j];
        s *= beta;
        for (std::size_t j = 0; j < len; ++j) M(i, k + 1 + j) -= s * std::conj(v[j]);
      }
    };
    right(A);
    right(Q);
    A(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) A(i, k) = Cx<Real>(0);
  }
}

template <class Real>
Cx<Real> wilkinson_shift(const Mat<Real>& H, std::size_t hi) {
  const Cx<Real> a = H(hi - 1, hi - 1);
  const Cx<Real> b = H(hi - 1, hi);
  const Cx<Real> c = H(hi, hi - 1);
  const Cx<Real> d = H(hi, hi);
  const Cx<Real> p = (a - d) / Real(2);
  const Cx<Real> bc = b * c;
  const Cx<Real> disc = sqrt(p * p + bc);
  const Cx<Real> den = abs(p + disc) >= abs(p - disc) ? p + disc : p - disc;
  if (den == Cx<Real>(0)) return d;
  return d - bc / den;
}

template <class Real>
struct SchurForm {
  Mat<Real> T;
  Mat<Real> Z;
  std::vector<Real> dropped;  // subdiagonal magnitude removed when each eigenvalue deflated
  int iterations = 0;
};

ComplexMatrix to_double(const Mat<double>& m) { return m; }
template <class Real>
ComplexMatrix to_double(const Mat<Real>& m) {
  return convert<double>(m);
}

// Complex Schur decomposition H = Z T Z^H of an upper Hessenberg matrix by
// single-shift implicit QR.
template <class Real>
void schur(SchurForm<Real>& s, Real tol, int budget, Real norm) {
  auto& H = s.T;
  auto& Z = s.Z;
  const std::size_t n = H.rows();
  const Real tiny = std::numeric_limits<Real>::min() * static_cast<Real>(n) / std::numeric_limits<Real>::epsilon();
  s.dropped.assign(n, 0);
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(n) - 1;
  int since_deflation = 0;
  while (hi > 0) {
    std::ptrdiff_t l = hi;
    for (; l > 0; --l) {
      const auto L = static_cast<std::size_t>(l);
      Real scale = cabs1(H(L - 1, L - 1)) + cabs1(H(L, L));
      if (scale == 0) scale = norm;
      const Real sub = cabs1(H(L, L - 1));
      if (sub <= tol * scale || sub <= tiny) {
        if (l == hi) s.dropped[L] = abs(H(L, L - 1));
        H(L, L - 1) = Cx<Real>(0);
        break;
      }
    }
    if (l == hi) {
      --hi;
      since_deflation = 0;
      continue;
    }
    if (s.iterations >= budget) {
      throw SolverFailure("QR iteration did not converge within " + std::to_string(budget) + " sweeps", to_double(H),
                          n - 1 - static_cast<std::size_t>(hi));
    }
    ++s.iterations;
    ++since_deflation;

    const auto lo = static_cast<std::size_t>(l);
    const auto top = static_cast<std::size_t>(hi);
    Cx<Real> mu;
    if (since_deflation % 10 == 0) {
      mu = H(top, top) + Real(0.75) * cabs1(H(top, top - 1));  // exceptional shift
    } else {
      mu = wilkinson_shift(H, top);
    }

    Cx<Real> x = H(lo, lo) - mu;
    Cx<Real> y = H(lo + 1, lo);
    for (std::size_t k = lo; k < top; ++k) {
      if (k > lo) {
        x = H(k, k - 1);
        y = H(k + 1, k - 1);
      }
      const Givens<Real> g = make_givens(x, y);
      if (k > lo) {
        H(k, k - 1) = g.r;
        H(k + 1, k - 1) = Cx<Real>(0);
      }
      rotate_rows(H, k, g, k, n);
      rotate_cols(H, k, g, 0, std::min(k + 3, top + 1));
      rotate_cols(Z, k, g, 0, n);
    }
  }
}

// Eigenvector of the upper-triangular T for eigenvalue T(k,k), by back substitution.
template <class Real>
std::vector<Cx<Real>> triangular_eigenvector(const Mat<Real>& T, std::size_t k, Real tnorm) {
  constexpr Real eps = std::numeric_limits<Real>::epsilon();
  const Real smin = std::max(eps * tnorm, std::numeric_limits<Real>::min() / eps);
  const Real big = sqrt(std::numeric_limits<Real>::max()) * eps;
  std::vector<Cx<Real>> y(k + 1);
  y[k] = Cx<Real>(1);
  const Cx<Real> lambda = T(k, k);
  for (std::size_t ii = k; ii-- > 0;) {
    Cx<Real> s{};
    for (std::size_t j = ii + 1; j <= k; ++j) s += T(ii, j) * y[j];
    Cx<Real> d = T(ii, ii) - lambda;
    if (abs(d) < smin) d = Cx<Real>(smin);
    y[ii] = -s / d;
    if (const Real a = abs(y[ii]); a > big) {
      for (std::size_t j = ii; j <= k; ++j) y[j] /= a;
    }
  }
  return y;
}

template <class Real>
Real default_tolerance() {
  // 1e-14 in double; same multiple of the unit roundoff otherwise.
  return Real(1e-14) * (std::numeric_limits<Real>::epsilon() / Real(std::numeric_limits<double>::epsilon()));
}

template <class Real>
SpectrumResult solve(const Mat<Real>& input, const EigenOptions& opts) {
  if (!input.square() || input.rows() == 0) throw ConfigError("eigenvalues: matrix must be square and non-empty");
  for (const auto& v : input.data())
    if (!std::isfinite(static_cast<double>(v.real())) || !std::isfinite(static_cast<double>(v.imag())))
      throw DomainError("eigenvalues: non-finite matrix entry");

  const std::size_t n = input.rows();
  SpectrumResult out;
  out.source_fingerprint = fingerprint(to_double(input));
  out.tolerance = static_cast<double>(Real(64) * static_cast<Real>(n) * std::numeric_limits<Real>::epsilon());

  const Real norm = frobenius_norm(input);
  SchurForm<Real> sf{input, Mat<Real>::identity(n), {}, 0};
  std::vector<Real> scaling(n, 1);
  if (opts.balance) scaling = balance(sf.T);
  hessenberg(sf.T, sf.Z);
  const Real tol = opts.deflation_tolerance > 0 ? static_cast<Real>(opts.deflation_tolerance) : default_tolerance<Real>();
  schur(sf, tol, opts.iterations_per_row * static_cast<int>(n), norm == 0 ? Real(1) : norm);
  out.iterations = sf.iterations;

  std::vector<Real> residual(n, 0);
  if (opts.compute_residuals && norm > 0) {
    const Real tnorm = frobenius_norm(sf.T);
    std::vector<Cx<Real>> v(n);
    for (std::size_t k = 0; k < n; ++k) {
      const auto y = triangular_eigenvector(sf.T, k, tnorm);
      for (std::size_t i = 0; i < n; ++i) {
        Cx<Real> s{};
        for (std::size_t j = 0; j <= k; ++j) s += sf.Z(i, j) * y[j];
        v[i] = s * scaling[i];
      }
      Real vnorm = 0;
      for (const auto& e : v) vnorm += std::norm(e);
      vnorm = sqrt(vnorm);
      Real r2 = 0;
      const Cx<Real> lambda = sf.T(k, k);
      for (std::size_t i = 0; i < n; ++i) {
        Cx<Real> s = -lambda * v[i];
        for (std::size_t j = 0; j < n; ++j) s += input(i, j) * v[j];
        r2 += std::norm(s);
      }
      residual[k] = sqrt(r2) / (norm * vnorm);
    }
  } else if (norm > 0) {
    for (std::size_t k = 0; k < n; ++k) residual[k] = sf.dropped[k] / norm;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<cplx> lambdas(n);
  for (std::size_t k = 0; k < n; ++k)
    lambdas[k] = cplx(static_cast<double>(sf.T(k, k).real()), static_cast<double>(sf.T(k, k).imag()));
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return lexicographic_less(lambdas[a], lambdas[b]); });
  out.eigenvalues.reserve(n);
  out.residuals.reserve(n);
  for (std::size_t k : order) {
    out.eigenvalues.push_back(lambdas[k]);
    out.residuals.push_back(static_cast<double>(residual[k]));
  }
  return out;
}

}  // namespace

bool lexicographic_less(cplx a, cplx b) noexcept {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

double SpectrumResult::max_residual() const noexcept {
  double m = 0.0;
  for (double r : residuals) m = std::max(m, r);
  return m;
}

SpectrumResult eigenvalues(const ComplexMatrix& m, const EigenOptions& opts) { return solve<double>(m, opts); }

SpectrumResult eigenvalues(const DenseMatrix<std::complex<long double>>& m, const EigenOptions& opts) {
  return solve<long double>(m, opts);
}

SpectrumResult eigenvalues(const DenseMatrix<std::complex<DoubleDouble>>& m, const EigenOptions& opts) {
  return solve<DoubleDouble>(m, opts);
}

}  // namespace bsq
