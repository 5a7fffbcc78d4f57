#pragma once

#include <string>

#include "bsq/dense_matrix.hpp"

namespace bsq {

enum class BasisKind { fourier, fock };

struct Basis {
  BasisKind kind = BasisKind::fourier;
  int N = 0;
  int padding = 0;  // extra ladder levels used before truncating (fock only)

  // 2N+1 Fourier modes e^{il theta}, l = -N..N, or N+1 Fock states.
  std::size_t dimension() const noexcept {
    return kind == BasisKind::fourier ? static_cast<std::size_t>(2 * N + 1) : static_cast<std::size_t>(N + 1);
  }
  friend bool operator==(const Basis&, const Basis&) = default;
};

const char* to_string(BasisKind kind) noexcept;

// Truncated matrix of a quantized symbol together with the data that
// produced it.
struct TruncatedOperator {
  ComplexMatrix matrix;
  Basis basis;
  double hbar = 0.0;
  double epsilon = 0.0;
  std::string symbol_fingerprint;
};

}  // namespace bsq
