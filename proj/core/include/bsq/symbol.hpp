#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bsq/dense_matrix.hpp"

namespace bsq {

// Real polynomial in one variable; coefficient k multiplies I^k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial monomial(int power, double coeff = 1.0);

  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  double coefficient(int k) const { return k >= 0 && k <= degree() ? coeffs_[k] : 0.0; }

  double operator()(double x) const;
  cplx operator()(cplx x) const;
  Polynomial derivative() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<double> coeffs_;  // trailing zeros removed
};

// p(theta, I) = f(I) + i eps q(theta, I) on the cylinder. q is stored in
// exponential form: key (m, n) holds the coefficient of e^{i m theta} I^n.
// Real-valuedness of q forces c(-m, n) = conj(c(m, n)).
class CircleSymbol {
 public:
  using Key = std::pair<int, int>;  // (Fourier index m, power of I)
  using Terms = std::map<Key, cplx>;

  CircleSymbol(Polynomial f, Terms q);

  const Polynomial& f() const noexcept { return f_; }
  const Terms& q() const noexcept { return q_; }

  int max_fourier_index() const noexcept;
  int degree_in_action() const noexcept;

  friend bool operator==(const CircleSymbol&, const CircleSymbol&) = default;

 private:
  Polynomial f_;
  Terms q_;
};

// p(x, xi) = f(x, xi) + i eps q(x, xi) on the plane. Key (m, n) holds the
// coefficient of x^m xi^n. f is restricted to the harmonic oscillator.
class PlaneSymbol {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, double>;

  static constexpr int kMaxDegree = 8;

  PlaneSymbol(Terms f, Terms q, double epsilon);
  static Terms harmonic_oscillator() { return {{{2, 0}, 1.0}, {{0, 2}, 1.0}}; }

  const Terms& f() const noexcept { return f_; }
  const Terms& q() const noexcept { return q_; }
  double epsilon() const noexcept { return epsilon_; }

  // Largest total degree m + n over f and q.
  int total_degree() const noexcept;

  PlaneSymbol with_epsilon(double eps) const { return PlaneSymbol(f_, q_, eps); }

  friend bool operator==(const PlaneSymbol&, const PlaneSymbol&) = default;

 private:
  Terms f_;
  Terms q_;
  double epsilon_;
};

struct EpsilonPolicy {
  enum class Mode { fixed, hbar_power };
  Mode mode = Mode::hbar_power;
  double value = 0.5;  // epsilon itself (fixed) or the exponent delta

  static EpsilonPolicy fixed(double eps) { return {Mode::fixed, eps}; }
  static EpsilonPolicy hbar_power(double delta) { return {Mode::hbar_power, delta}; }

  // Epsilon for the given hbar; throws ConfigError when negative or non-finite.
  double resolve(double hbar) const;
  // Non-fatal diagnostic for large perturbations (eps >= 0.5).
  static std::optional<std::string> warning(double eps);
};

cplx eval_circle(const CircleSymbol& sym, cplx theta, cplx action, double eps);
cplx eval_plane(const PlaneSymbol& sym, cplx x, cplx xi);

// m = 0 Fourier coefficient of q, as a real polynomial in I. Exact.
Polynomial theta_average(const CircleSymbol& sym);

bool pt_symmetry_check(const PlaneSymbol& sym);

// Holomorphic symbol on the cylinder in the form consumed by the action
// machinery. Either a CircleSymbol with its epsilon, or a PlaneSymbol pulled
// back through x = sqrt(2I) cos(theta), xi = -sqrt(2I) sin(theta).
class CylinderSymbol {
 public:
  static CylinderSymbol circle(CircleSymbol sym, double eps);

  cplx value(cplx theta, cplx action) const;
  cplx operator()(cplx theta, cplx action) const { return value(theta, action); }
  cplx d_daction(cplx theta, cplx action) const;

  double epsilon() const noexcept { return eps_; }
  // eps = 0 part as a function of I alone: f on the circle, 2I after pullback.
  const Polynomial& unperturbed() const noexcept { return unperturbed_; }
  // Theta-average of q as a polynomial in I.
  const Polynomial& averaged_perturbation() const noexcept { return averaged_q_; }
  // Pullbacks are only holomorphic off the cut of sqrt(2I).
  bool is_pullback() const noexcept { return std::holds_alternative<PlaneSymbol>(source_); }

 private:
  friend CylinderSymbol pullback_action_angle(const PlaneSymbol& sym);
  CylinderSymbol(std::variant<CircleSymbol, PlaneSymbol> source, double eps, Polynomial unperturbed,
                 Polynomial averaged_q);

  std::variant<CircleSymbol, PlaneSymbol> source_;
  double eps_;
  Polynomial unperturbed_;
  Polynomial averaged_q_;
};

// Action-angle pullback of a harmonic-oscillator plane symbol. The returned
// evaluator throws BranchError for I on (-inf, 0].
CylinderSymbol pullback_action_angle(const PlaneSymbol& sym);

}  // namespace bsq
