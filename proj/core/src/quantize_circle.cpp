#include "bsq/quantize_circle.hpp"

#include <fmt/format.h>

#include <cmath>

#include "bsq/errors.hpp"
#include "bsq/fingerprint.hpp"
#include "bsq/symbol_text.hpp"

namespace bsq {

const char* to_string(BasisKind kind) noexcept { return kind == BasisKind::fourier ? "fourier" : "fock"; }

namespace {

template <class Real>
Real ipow(Real x, int n) {
  Real r = 1;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

// Adds c * (hbar (l + m/2))^n at (l + m, l) for every l with both indices in range.
template <class Real>
void add_shift_term(DenseMatrix<std::complex<Real>>& out, int N, int m, int n, std::complex<Real> c, Real hbar) {
  for (int l = -N; l <= N; ++l) {
    const int target = l + m;
    if (target < -N || target > N) continue;
    const Real midpoint = hbar * (static_cast<Real>(l) + static_cast<Real>(m) / 2);
    out(static_cast<std::size_t>(target + N), static_cast<std::size_t>(l + N)) += c * ipow(midpoint, n);
  }
}

}  // namespace

template <class Real>
DenseMatrix<std::complex<Real>> circle_matrix(const CircleSymbol& sym, Real eps, Real hbar, int N) {
  using C = std::complex<Real>;
  if (N < 0) throw ConfigError("N must be >= 0");
  if (!(hbar > 0) || !std::isfinite(static_cast<double>(hbar))) throw ConfigError("hbar must be finite and > 0");
  if (N == 0 && sym.max_fourier_index() > 0)
    throw DegenerateTruncation("N = 0 cannot carry theta-dependent terms");
  const auto dim = static_cast<std::size_t>(2 * N + 1);
  DenseMatrix<C> out(dim, dim);
  const auto& f = sym.f().coefficients();
  for (std::size_t n = 0; n < f.size(); ++n)
    if (f[n] != 0.0) add_shift_term(out, N, 0, static_cast<int>(n), C(static_cast<Real>(f[n]), 0), hbar);
  if (eps != 0) {
    const C ie(0, eps);
    for (const auto& [key, c] : sym.q())
      add_shift_term(out, N, key.first, key.second, ie * C(static_cast<Real>(c.real()), static_cast<Real>(c.imag())),
                     hbar);
  }
  return out;
}

template DenseMatrix<std::complex<double>> circle_matrix<double>(const CircleSymbol&, double, double, int);
template DenseMatrix<std::complex<long double>> circle_matrix<long double>(const CircleSymbol&, long double,
                                                                         long double, int);
template DenseMatrix<std::complex<DoubleDouble>> circle_matrix<DoubleDouble>(const CircleSymbol&, DoubleDouble,
                                                                           DoubleDouble, int);

TruncatedOperator quantize_circle(const CircleSymbol& sym, double eps, double hbar, int N) {
  if (!std::isfinite(eps) || eps < 0.0) throw ConfigError("epsilon must be finite and >= 0");
  TruncatedOperator op;
  op.matrix = circle_matrix<double>(sym, eps, hbar, N);
  op.basis = {BasisKind::fourier, N, 0};
  op.hbar = hbar;
  op.epsilon = eps;
  op.symbol_fingerprint = fingerprint(fmt::format("circle|{}|eps={}", to_text(sym), eps));
  return op;
}

}  // namespace bsq
