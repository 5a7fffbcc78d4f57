#include "bsq/action.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "bsq/errors.hpp"

namespace bsq {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kMinSlope = 1e-10;

// Real root of f(I) = E near start: Newton first, then an outward bracket
// search with bisection. Throws InversionError if no root is found.
double real_root(const Polynomial& f, double energy, double start) {
  const Polynomial df = f.derivative();
  double x = start;
  for (int it = 0; it < 100; ++it) {
    const double r = f(x) - energy;
    if (std::abs(r) <= 4 * kEps * (1 + std::abs(energy))) return x;
    const double d = df(x);
    if (d == 0.0) break;
    const double step = r / d;
    x -= step;
    if (!std::isfinite(x)) break;
    if (std::abs(step) <= 4 * kEps * (1 + std::abs(x))) return x;
  }

  auto g = [&](double t) { return f(t) - energy; };
  double width = 1e-3 * std::max(1.0, std::abs(start));
  for (int expand = 0; expand < 200; ++expand, width *= 2) {
    for (double dir : {1.0, -1.0}) {
      double a = start;
      double b = start + dir * width;
      if (std::signbit(g(a)) == std::signbit(g(b))) continue;
      for (int it = 0; it < 200 && std::abs(b - a) > 4 * kEps * (1 + std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        if (std::signbit(g(mid)) == std::signbit(g(a))) a = mid;
        else b = mid;
      }
      return 0.5 * (a + b);
    }
  }
  throw InversionError("no real I with f(I) = " + std::to_string(energy));
}

}  // namespace

const char* to_string(QuantizationRule r) noexcept { return r == QuantizationRule::circle_k ? "circle_k" : "line_maslov"; }

const char* to_string(PredictionMode m) noexcept {
  return m == PredictionMode::averaged_first_order ? "averaged_first_order" : "principal_exact";
}

ActionMap::ActionMap(CylinderSymbol sym, double working_energy, ActionOptions opts)
    : sym_(std::move(sym)), e0_(working_energy), opts_(opts), seed_(0.0) {
  if (!std::isfinite(working_energy)) throw DomainError("non-finite working energy");
  if (opts_.nodes < 4) throw ConfigError("need at least 4 quadrature nodes");
  if (!(opts_.newton_tol > 0.0) || opts_.max_iter < 1) throw ConfigError("invalid Newton settings");
  const Polynomial& f = sym_.unperturbed();
  if (f.degree() < 1) throw NearCriticalLevel("f is constant; every level is critical");
  seed_ = real_root(f, e0_, sym_.is_pullback() ? e0_ / 2 : 0.0);
  if (sym_.is_pullback() && !(seed_ > 0.0))
    throw BranchError("working energy must lie above the bottom of the oscillator well");
  if (std::abs(f.derivative()(seed_)) < kMinSlope) throw NearCriticalLevel("f'(I) vanishes at the working energy");
}

double ActionMap::real_inverse(double energy) const {
  if (!std::isfinite(energy)) throw DomainError("non-finite energy");
  return real_root(sym_.unperturbed(), energy, seed_);
}

cplx ActionMap::newton_node(cplx theta, cplx energy, cplx start) const {
  const double scale = 1.0 + std::abs(energy);
  cplx x = start;
  for (int it = 0; it < opts_.max_iter; ++it) {
    const cplx r = sym_.value(theta, x) - energy;
    if (std::abs(r) <= 1e-3 * opts_.newton_tol * scale) return x;
    const cplx d = sym_.d_daction(theta, x);
    if (std::abs(d) < kMinSlope) throw NearCriticalLevel("|dp/dI| vanishes on the level set");
    const cplx step = r / d;
    x -= step;
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) throw NearCriticalLevel("Newton diverged on the level set");
    if (std::abs(step) <= 4 * kEps * (1 + std::abs(x))) break;
  }
  if (std::abs(sym_.value(theta, x) - energy) > opts_.newton_tol * scale)
    throw NearCriticalLevel("Newton did not converge on the level set");
  return x;
}

LevelSet ActionMap::solve_level_set(cplx energy) const {
  if (!std::isfinite(energy.real()) || !std::isfinite(energy.imag())) throw DomainError("non-finite energy");
  const auto m = static_cast<std::size_t>(opts_.nodes);
  LevelSet out{energy, std::vector<cplx>(m), std::vector<cplx>(m)};
  cplx x = real_inverse(energy.real());
  const double step = 2 * std::numbers::pi / static_cast<double>(m);
  for (std::size_t j = 0; j < m; ++j) {
    const cplx theta(step * static_cast<double>(j), 0.0);
    x = newton_node(theta, energy, x);
    out.action[j] = x;
    out.dp_daction[j] = sym_.d_daction(theta, x);
  }
  // Continue once more around to theta = 2pi; the loop must close.
  const cplx wrap = newton_node(cplx(2 * std::numbers::pi, 0.0), energy, x);
  if (std::abs(wrap - out.action[0]) > 1e-10)
    throw NearCriticalLevel("level-set continuation did not close after one period");
  return out;
}

ActionMap::Value ActionMap::evaluate(cplx energy) const {
  const LevelSet ls = solve_level_set(energy);
  cplx sum{};
  cplx dsum{};
  for (std::size_t j = 0; j < ls.action.size(); ++j) {
    sum += ls.action[j];
    dsum += 1.0 / ls.dp_daction[j];
  }
  const double m = static_cast<double>(ls.action.size());
  return {sum / m, dsum / m};
}

cplx ActionMap::invert_action(cplx target) const {
  if (!std::isfinite(target.real()) || !std::isfinite(target.imag())) throw DomainError("non-finite action");
  cplx e = sym_.unperturbed()(target);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts_.max_iter; ++it) {
    const Value v = evaluate(e);
    const cplx r = v.action - target;
    residual = std::abs(r);
    if (residual <= 1e-14 * (1 + std::abs(target))) return e;
    if (std::abs(v.derivative) < kMinSlope) throw DegeneracyError("d(action)/dE vanishes");
    const cplx step = r / v.derivative;
    e -= step;
    if (std::abs(step) <= 4 * kEps * (1 + std::abs(e))) {
      residual = std::abs(action_integral(e) - target);
      break;
    }
  }
  if (!(residual <= 1e-11)) throw InversionError("Newton on the action did not reach 1e-11");
  return e;
}

cplx averaged_generator(const CylinderSymbol& sym, cplx action) {
  return sym.unperturbed()(action) + cplx(0.0, sym.epsilon()) * sym.averaged_perturbation()(action);
}

QuantizationPrediction predict_spectrum(const ActionMap& am, double hbar, QuantizationRule rule, PredictionMode mode,
                                        const Rectangle& rect, int floquet_offset) {
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ConfigError("hbar must be finite and > 0");
  if (rect.empty()) throw ConfigError("prediction rectangle is empty");
  if (!std::isfinite(rect.re_min) || !std::isfinite(rect.re_max))
    throw ConfigError("prediction rectangle needs a finite real extent");

  QuantizationPrediction out{rule, mode, hbar, am.symbol().epsilon(), floquet_offset, {}};
  const double shift = (rule == QuantizationRule::line_maslov ? 0.5 : 0.0) - floquet_offset;
  const double a = am.real_inverse(rect.re_min);
  const double b = am.real_inverse(rect.re_max);
  const double k_lo = std::floor(std::min(a, b) / hbar - shift) - 2;
  const double k_hi = std::ceil(std::max(a, b) / hbar - shift) + 2;
  if (k_hi - k_lo > 1e6) throw ConfigError("prediction window spans more than 1e6 quantum numbers");

  for (auto k = static_cast<long long>(k_lo); k <= static_cast<long long>(k_hi); ++k) {
    const double action = hbar * (static_cast<double>(k) + shift);
    if (am.symbol().is_pullback() && !(action > 0.0)) continue;
    const cplx lambda =
        mode == PredictionMode::principal_exact ? am.invert_action(action) : averaged_generator(am.symbol(), action);
    if (rect.contains(lambda)) out.points.push_back({static_cast<int>(k), lambda});
  }
  return out;
}

}  // namespace bsq
