#include "bsq/quantize_fock.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

#include "bsq/errors.hpp"
#include "bsq/fingerprint.hpp"
#include "bsq/symbol_text.hpp"

namespace bsq {

using std::abs;
using std::sqrt;

template <class Real>
typename LadderPair<Real>::Matrix LadderPair<Real>::position() const {
  using C = std::complex<Real>;
  return (a + a_dag) * C(1 / sqrt(Real(2)), 0);
}

template <class Real>
typename LadderPair<Real>::Matrix LadderPair<Real>::momentum() const {
  using C = std::complex<Real>;
  // 1/(i sqrt 2) = -i/sqrt 2
  return (a - a_dag) * C(0, -1 / sqrt(Real(2)));
}

template struct LadderPair<double>;
template struct LadderPair<long double>;
template struct LadderPair<DoubleDouble>;

template <class Real>
LadderPair<Real> ladder(std::size_t dim, Real hbar) {
  if (dim < 2) throw ConfigError("ladder dimension must be >= 2");
  if (!(hbar > 0)) throw ConfigError("hbar must be > 0");
  LadderPair<Real> out;
  out.a = DenseMatrix<std::complex<Real>>(dim, dim);
  out.a_dag = DenseMatrix<std::complex<Real>>(dim, dim);
  out.dim = dim;
  out.hbar = hbar;
  for (std::size_t alpha = 1; alpha < dim; ++alpha) {
    const Real v = sqrt(hbar * static_cast<Real>(alpha));
    out.a(alpha - 1, alpha) = v;      // a zeta_alpha = sqrt(hbar alpha) zeta_{alpha-1}
    out.a_dag(alpha, alpha - 1) = v;  // a^dag zeta_{alpha-1} = sqrt(hbar alpha) zeta_alpha
  }
  return out;
}

template LadderPair<double> ladder<double>(std::size_t, double);
template LadderPair<long double> ladder<long double>(std::size_t, long double);
template LadderPair<DoubleDouble> ladder<DoubleDouble>(std::size_t, DoubleDouble);

namespace {

template <class Real>
std::vector<DenseMatrix<std::complex<Real>>> powers(const DenseMatrix<std::complex<Real>>& M, int upto) {
  std::vector<DenseMatrix<std::complex<Real>>> p;
  p.reserve(static_cast<std::size_t>(upto) + 1);
  p.push_back(DenseMatrix<std::complex<Real>>::identity(M.rows()));
  for (int k = 1; k <= upto; ++k) p.push_back(p.back() * M);
  return p;
}

double binomial(int m, int k) {
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (m - k + j) / j;
  return r;
}

}  // namespace

template <class Real>
DenseMatrix<std::complex<Real>> mccoy_weyl(const DenseMatrix<std::complex<Real>>& X,
                                           const DenseMatrix<std::complex<Real>>& Xi, int m, int n) {
  using C = std::complex<Real>;
  if (m < 0 || n < 0) throw ConfigError("negative monomial power");
  const auto xp = powers(X, m);
  const auto xin = powers(Xi, n).back();
  DenseMatrix<C> sum(X.rows(), X.cols());
  for (int k = 0; k <= m; ++k) sum += (xp[k] * xin * xp[m - k]) * C(static_cast<Real>(binomial(m, k)), 0);
  return sum * C(Real(std::ldexp(1.0, -m)), 0);
}

template DenseMatrix<std::complex<double>> mccoy_weyl<double>(const DenseMatrix<std::complex<double>>&,
                                                              const DenseMatrix<std::complex<double>>&, int, int);
template DenseMatrix<std::complex<long double>> mccoy_weyl<long double>(
    const DenseMatrix<std::complex<long double>>&, const DenseMatrix<std::complex<long double>>&, int, int);
template DenseMatrix<std::complex<DoubleDouble>> mccoy_weyl<DoubleDouble>(
    const DenseMatrix<std::complex<DoubleDouble>>&, const DenseMatrix<std::complex<DoubleDouble>>&, int, int);

template <class Real>
DenseMatrix<std::complex<Real>> plane_matrix(const PlaneSymbol& sym, Real hbar, int N, int padding) {
  using C = std::complex<Real>;
  if (N < 0) throw ConfigError("N must be >= 0");
  if (padding < 0) padding = sym.total_degree();
  const auto dim = static_cast<std::size_t>(N) + 1 + static_cast<std::size_t>(padding);
  const auto lp = ladder<Real>(std::max<std::size_t>(dim, 2), hbar);
  const auto X = lp.position();
  const auto Xi = lp.momentum();

  DenseMatrix<C> full(X.rows(), X.cols());
  for (const auto& [key, c] : sym.f()) full += mccoy_weyl(X, Xi, key.first, key.second) * C(static_cast<Real>(c), 0);
  if (sym.epsilon() != 0.0) {
    const C ie(0, static_cast<Real>(sym.epsilon()));
    for (const auto& [key, c] : sym.q())
      full += mccoy_weyl(X, Xi, key.first, key.second) * (ie * static_cast<Real>(c));
  }
  for (const auto& v : full.data())
    if (!std::isfinite(static_cast<double>(abs(v))))
      throw NumericRangeError("ladder products overflowed; reduce N or the symbol degree");
  return full.leading_block(static_cast<std::size_t>(N) + 1, static_cast<std::size_t>(N) + 1);
}

template DenseMatrix<std::complex<double>> plane_matrix<double>(const PlaneSymbol&, double, int, int);
template DenseMatrix<std::complex<long double>> plane_matrix<long double>(const PlaneSymbol&, long double, int, int);
template DenseMatrix<std::complex<DoubleDouble>> plane_matrix<DoubleDouble>(const PlaneSymbol&, DoubleDouble, int, int);

TruncatedOperator quantize_plane(const PlaneSymbol& sym, double hbar, int N) {
  if (N < 1) throw ConfigError("N must be >= 1");
  TruncatedOperator op;
  op.matrix = plane_matrix<double>(sym, hbar, N);
  op.basis = {BasisKind::fock, N, sym.total_degree()};
  op.hbar = hbar;
  op.epsilon = sym.epsilon();
  op.symbol_fingerprint = fingerprint(fmt::format("line|{}|eps={}", to_text(sym), sym.epsilon()));
  return op;
}

}  // namespace bsq
