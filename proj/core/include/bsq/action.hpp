#pragma once

#include <limits>
#include <vector>

#include "bsq/symbol.hpp"

namespace bsq {

struct Rectangle {
  double re_min = -std::numeric_limits<double>::infinity();
  double re_max = std::numeric_limits<double>::infinity();
  double im_min = -std::numeric_limits<double>::infinity();
  double im_max = std::numeric_limits<double>::infinity();

  bool contains(cplx z) const noexcept {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
  bool empty() const noexcept { return !(re_min <= re_max && im_min <= im_max); }
  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

struct ActionOptions {
  int nodes = 256;            // trapezoid nodes on the loop theta in [0, 2pi)
  double newton_tol = 1e-12;  // relative residual |p - E| / (1 + |E|)
  int max_iter = 50;
};

// Complex level set {p = E} sampled as I_j = l(theta_j, E), together with
// dp/dI at each node.
struct LevelSet {
  cplx energy;
  std::vector<cplx> action;
  std::vector<cplx> dp_daction;
};

// The complex action E -> (1/2pi) oint I dtheta over the level set of a
// cylinder symbol, and its inverse g. Immutable after construction; every
// query runs its own continuation from the cached real seed.
class ActionMap {
 public:
  // working_energy is a real energy E0 on a regular level (f'(f^{-1}(E0)) != 0);
  // it anchors the real seeds used by every continuation.
  ActionMap(CylinderSymbol sym, double working_energy, ActionOptions opts = {});

  const CylinderSymbol& symbol() const noexcept { return sym_; }
  const ActionOptions& options() const noexcept { return opts_; }
  double working_energy() const noexcept { return e0_; }

  // Real I with f(I) = E, continued from the seed at E0.
  double real_inverse(double energy) const;

  LevelSet solve_level_set(cplx energy) const;

  struct Value {
    cplx action;
    cplx derivative;  // d(action)/dE = mean of 1/(dp/dI) over the loop
  };
  Value evaluate(cplx energy) const;
  cplx action_integral(cplx energy) const { return evaluate(energy).action; }

  // g(I): the energy whose action equals target.
  cplx invert_action(cplx target) const;

 private:
  cplx newton_node(cplx theta, cplx energy, cplx start) const;

  CylinderSymbol sym_;
  double e0_;
  ActionOptions opts_;
  double seed_;  // f^{-1}(E0)
};

enum class QuantizationRule { circle_k, line_maslov };
enum class PredictionMode { averaged_first_order, principal_exact };

const char* to_string(QuantizationRule r) noexcept;
const char* to_string(PredictionMode m) noexcept;

struct PredictedPoint {
  int k;
  cplx lambda;
};

struct QuantizationPrediction {
  QuantizationRule rule;
  PredictionMode mode;
  double hbar;
  double epsilon;
  int floquet_offset = 0;
  std::vector<PredictedPoint> points;
};

// First-order closed form f(I) + i eps qbar(I).
cplx averaged_generator(const CylinderSymbol& sym, cplx action);

// Bohr-Sommerfeld points lambda_k = g(hbar (k + shift - J)) with shift 0
// (circle_k) or 1/2 (line_maslov), restricted to rect. The real extent of
// rect must be finite; it fixes the enumerated k through f^{-1}.
QuantizationPrediction predict_spectrum(const ActionMap& am, double hbar, QuantizationRule rule, PredictionMode mode,
                                        const Rectangle& rect, int floquet_offset = 0);

}  // namespace bsq
