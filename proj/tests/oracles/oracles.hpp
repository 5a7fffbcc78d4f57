#pragma once

#include <complex>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "bsq/dense_matrix.hpp"

// Reference computations used only by the tests. Each one reaches its answer
// by a different route than the library code it checks.
namespace bsq::oracle {

// Coefficients c_0..c_n of det(lambda I - M) = sum_k c_k lambda^(n-k), c_0 = 1,
// by the Leverrier-Faddeev recursion.
std::vector<cplx> characteristic_polynomial(const ComplexMatrix& m);

// Roots of a monic polynomial (coefficients highest degree first) from the
// eigenvalues of its companion matrix (Eigen), each polished by Newton.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

// Eigenvalues through the characteristic polynomial and companion roots.
std::vector<cplx> charpoly_eigenvalues(const ComplexMatrix& m);

// Symmetric Hausdorff distance between two point sets.
double hausdorff(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Largest distance in a one-to-one pairing of equally sized multisets:
// exact bottleneck assignment by brute force over permutations for n <= 8,
// greedy nearest pairing beyond.
double pairing_distance(std::vector<cplx> a, std::vector<cplx> b);

// Determinant by LU with partial pivoting.
cplx determinant(ComplexMatrix m);

// Average of all distinct products of m copies of X and n copies of Xi.
ComplexMatrix full_symmetrization(const ComplexMatrix& X, const ComplexMatrix& Xi, int m, int n);

// x^m xi^n summed by nested Horner evaluation (outer in x, inner in xi).
cplx horner_plane(const std::map<std::pair<int, int>, double>& terms, cplx x, cplx xi);

// (1/M) sum_j f(2 pi j / M).
cplx trapezoid_mean(const std::function<cplx(double)>& f, int M);

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t n);
ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n);

// Least-squares slope of log(err) against log(h).
double loglog_slope(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace bsq::oracle
