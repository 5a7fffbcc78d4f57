#pragma once

#include <complex>
#include <cstddef>

#include "bsq/dense_matrix.hpp"
#include "bsq/double_double.hpp"
#include "bsq/symbol.hpp"
#include "bsq/truncated_operator.hpp"

namespace bsq {

// Annihilation/creation matrices on the first `dim` Fock states
// zeta_alpha = z^alpha / sqrt(hbar^{alpha+1} alpha!), with [a, a^dag] = hbar
// away from the last state.
template <class Real>
struct LadderPair {
  using Matrix = DenseMatrix<std::complex<Real>>;
  Matrix a;
  Matrix a_dag;
  std::size_t dim = 0;
  Real hbar = 0;

  // (a + a^dag)/sqrt(2) and (a - a^dag)/(i sqrt(2)); [X, Xi] = i hbar.
  Matrix position() const;
  Matrix momentum() const;
};

template <class Real>
LadderPair<Real> ladder(std::size_t dim, Real hbar);

// Weyl-ordered matrix of x^m xi^n by McCoy's formula,
//   2^{-m} sum_k C(m,k) X^k Xi^n X^{m-k},
// from the given position/momentum matrices (no truncation applied).
template <class Real>
DenseMatrix<std::complex<Real>> mccoy_weyl(const DenseMatrix<std::complex<Real>>& X,
                                           const DenseMatrix<std::complex<Real>>& Xi, int m, int n);

// Fock-basis matrix of the Weyl quantization of sym: built on
// N + 1 + padding states (padding defaults to the symbol's total degree) and
// cut to the leading (N+1) x (N+1) block.
template <class Real>
DenseMatrix<std::complex<Real>> plane_matrix(const PlaneSymbol& sym, Real hbar, int N, int padding = -1);

TruncatedOperator quantize_plane(const PlaneSymbol& sym, double hbar, int N);

extern template struct LadderPair<double>;
extern template struct LadderPair<long double>;
extern template struct LadderPair<DoubleDouble>;

}  // namespace bsq
