#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "bsq/dense_matrix.hpp"
#include "bsq/double_double.hpp"
#include "bsq/errors.hpp"

namespace bsq {

struct EigenOptions {
  // Diagonal (radix-2) balancing before the Hessenberg reduction.
  bool balance = false;
  // Certify each eigenvalue with an eigenvector residual; otherwise report the
  // subdiagonal dropped at deflation as a backward-error estimate.
  bool compute_residuals = true;
  // Subdiagonal h(k+1,k) is deflated once it falls below
  // tol * (|h(k,k)| + |h(k+1,k+1)|). Zero selects the default, 1e-14 in
  // double precision scaled by the unit roundoff ratio for wider types.
  double deflation_tolerance = 0.0;
  // Iteration budget is this many sweeps per matrix row.
  int iterations_per_row = 40;
};

struct SpectrumResult {
  std::vector<cplx> eigenvalues;  // sorted by (Re, Im)
  std::vector<double> residuals;  // ||Mv - lambda v|| / (||M||_F ||v||), same order
  double tolerance = 0.0;         // every residual is expected below this
  std::string source_fingerprint;
  int iterations = 0;

  double max_residual() const noexcept;
  std::size_t size() const noexcept { return eigenvalues.size(); }
};

// Raised when the QR iteration exhausts its budget. Carries the partially
// reduced Hessenberg form and the number of eigenvalues already deflated.
class SolverFailure : public NumericError {
 public:
  SolverFailure(const std::string& msg, ComplexMatrix partial, std::size_t deflated)
      : NumericError(msg), partial_(std::move(partial)), deflated_(deflated) {}
  const ComplexMatrix& partial_form() const noexcept { return partial_; }
  std::size_t deflated() const noexcept { return deflated_; }

 private:
  ComplexMatrix partial_;
  std::size_t deflated_;
};

// All eigenvalues of a dense complex matrix. Throws DomainError on non-finite
// entries, ConfigError on empty or non-square input, SolverFailure on
// non-convergence.
SpectrumResult eigenvalues(const ComplexMatrix& m, const EigenOptions& opts = {});

// Same algorithm carried out in wider arithmetic (x87 long double, or
// double-double). Used for strongly non-normal matrices whose eigenvalue
// condition numbers exceed what double precision can resolve.
SpectrumResult eigenvalues(const DenseMatrix<std::complex<long double>>& m, const EigenOptions& opts = {});
SpectrumResult eigenvalues(const DenseMatrix<std::complex<DoubleDouble>>& m, const EigenOptions& opts = {});

// Seam for substituting a different dense eigenvalue routine with the same
// contract.
using EigenvalueRoutine = std::function<SpectrumResult(const ComplexMatrix&)>;

// Sort key used for every eigenvalue list in this library.
bool lexicographic_less(cplx a, cplx b) noexcept;

}  // namespace bsq
