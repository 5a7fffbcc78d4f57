#pragma once

#include <complex>

#include "bsq/dense_matrix.hpp"
#include "bsq/double_double.hpp"
#include "bsq/symbol.hpp"
#include "bsq/truncated_operator.hpp"

namespace bsq {

// Weyl quantization of sym on L^2(S^1) restricted to e_l = e^{il theta},
// |l| <= N. A term c e^{im theta} I^n sends e_l to c (hbar (l + m/2))^n e_{l+m};
// couplings leaving the window are dropped. Row/column index l + N.
//
// Throws DegenerateTruncation for N = 0 with theta-dependent terms and
// ConfigError for N < 0 or hbar <= 0.
TruncatedOperator quantize_circle(const CircleSymbol& sym, double eps, double hbar, int N);

// Same matrix assembled in another floating-point type; hbar and eps are
// taken in that type so no rounding to double enters the entries.
template <class Real>
DenseMatrix<std::complex<Real>> circle_matrix(const CircleSymbol& sym, Real eps, Real hbar, int N);

extern template DenseMatrix<std::complex<double>> circle_matrix<double>(const CircleSymbol&, double, double, int);
extern template DenseMatrix<std::complex<long double>> circle_matrix<long double>(const CircleSymbol&, long double,
                                                                                long double, int);
extern template DenseMatrix<std::complex<DoubleDouble>> circle_matrix<DoubleDouble>(const CircleSymbol&, DoubleDouble,
                                                                                  DoubleDouble, int);

}  // namespace bsq
