#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bsq/action.hpp"
#include "bsq/eigensolver.hpp"
#include "bsq/experiment.hpp"
#include "bsq/quantize_circle.hpp"
#include "bsq/quantize_fock.hpp"
#include "bsq/symbol_text.hpp"
#include "oracles.hpp"

using namespace bsq;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Largest distance from a point of `from` (restricted to the window) to its
// nearest neighbour in `to`.
double nearest_distance(const std::vector<cplx>& from, const std::vector<cplx>& to, const Interval& window) {
  double worst = 0.0;
  for (const cplx& p : from) {
    if (!window.contains(p.real())) continue;
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& q : to) best = std::min(best, std::abs(p - q));
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<cplx> points(const QuantizationPrediction& p) {
  std::vector<cplx> out;
  for (const auto& pt : p.points) out.push_back(pt.lambda);
  return out;
}

const QuantizationPrediction& find_prediction(const std::vector<QuantizationPrediction>& all, QuantizationRule rule,
                                              PredictionMode mode) {
  for (const auto& p : all)
    if (p.rule == rule && p.mode == mode) return p;
  throw std::logic_error("prediction missing");
}

Verdict baselines() {
  const auto t0 = Clock::now();
  const int N = 66;
  const double hbar = 1.0 / N;

  ExperimentConfig circle;
  circle.symbol = "I ; cos(theta) + I^2";
  circle.epsilon = EpsilonPolicy::fixed(0.0);
  const auto cs = solve_operator(circle).eigenvalues;
  double circle_err = cs.size() == 2 * N + 1 ? 0.0 : std::numeric_limits<double>::infinity();
  for (int k = -N; k <= N && std::isfinite(circle_err); ++k)
    circle_err = std::max(circle_err, std::abs(cs[static_cast<std::size_t>(k + N)] - cplx(hbar * k)));

  ExperimentConfig line = circle;
  line.model = Model::line;
  line.symbol = "x^2 + xi^2 ; x^2";
  const auto ls = solve_operator(line).eigenvalues;
  double line_err = ls.size() == N + 1 ? 0.0 : std::numeric_limits<double>::infinity();
  for (int k = 0; k <= N && std::isfinite(line_err); ++k)
    line_err = std::max(line_err, std::abs(ls[static_cast<std::size_t>(k)] - cplx(hbar * (2 * k + 1))));

  const double t = seconds_since(t0);
  return {circle_err <= 1e-12 && line_err <= 1e-10 && t < 5.0,
          fmt::format("circle max err {:.2e} (<= 1e-12), line max err {:.2e} (<= 1e-10), {:.2f} s (< 5 s)",
                      circle_err, line_err, t)};
}

Verdict convergence_order() {
  const auto t0 = Clock::now();
  std::vector<double> hs;
  std::vector<double> errs;
  for (int N : {33, 66, 132}) {
    ExperimentConfig c;
    c.symbol = "I ; cos(theta) + I^2";
    c.N = N;
    c.epsilon = EpsilonPolicy::fixed(0.1);
    c.precision = Precision::double_double;
    const auto computed = solve_operator(c).eigenvalues;
    const auto& pred =
        find_prediction(predict(c), QuantizationRule::circle_k, PredictionMode::principal_exact);
    hs.push_back(c.resolved_hbar());
    errs.push_back(nearest_distance(points(pred), computed, c.resolved_window()));
  }
  const double slope = oracle::loglog_slope(hs, errs);
  const bool decreasing = errs[1] < errs[0] && errs[2] < errs[1];
  const double t = seconds_since(t0);
  return {decreasing && slope >= 1.5 && t < 60.0,
          fmt::format("errors {:.2e}, {:.2e}, {:.2e} at N = 33, 66, 132; order {:.2f} (>= 1.5); {:.1f} s (< 60 s)",
                      errs[0], errs[1], errs[2], slope, t)};
}

Verdict averaged_agreement() {
  ExperimentConfig c;
  c.symbol = "I ; cos(theta) + I^2";
  const double hbar = c.resolved_hbar();
  const double eps = c.resolved_epsilon();
  const Interval window = c.resolved_window();
  const auto computed = solve_operator(c).eigenvalues;

  std::vector<cplx> closed_form;
  for (int k = -c.N; k <= c.N; ++k) closed_form.push_back(cplx(hbar * k, eps * std::pow(hbar * k, 2)));
  const double averaged = nearest_distance(closed_form, computed, window);
  const auto& pred = find_prediction(predict(c), QuantizationRule::circle_k, PredictionMode::principal_exact);
  const double principal = nearest_distance(points(pred), computed, window);
  const double bound = 5 * eps * eps;
  return {averaged <= bound && principal <= averaged,
          fmt::format("averaged {:.2e} (<= 5 eps^2 = {:.3f}), principal {:.2e} (<= averaged)", averaged, bound,
                      principal)};
}

Verdict maslov() {
  const auto t0 = Clock::now();
  ExperimentConfig c;
  c.model = Model::line;
  c.symbol = "x^2 + xi^2 ; x^2";
  const auto computed = solve_operator(c).eigenvalues;
  const auto all = predict(c);
  const Interval w = c.resolved_window();
  const double with = nearest_distance(
      points(find_prediction(all, QuantizationRule::line_maslov, PredictionMode::principal_exact)), computed, w);
  const double without = nearest_distance(
      points(find_prediction(all, QuantizationRule::circle_k, PredictionMode::principal_exact)), computed, w);
  const double t = seconds_since(t0);
  return {with < without && t < 30.0,
          fmt::format("g(hbar(k+1/2)) {:.2e} < g(hbar k) {:.2e}; {:.2f} s (< 30 s)", with, without, t)};
}

Verdict pt_realness() {
  ExperimentConfig c;
  c.model = Model::line;
  c.symbol = "x^2 + xi^2 ; x^3";
  const PtReport pt = pt_verify(c);

  // Independent checks on the matrix and its spectrum.
  const int N = c.N;
  const ComplexMatrix m =
      quantize_plane(parse_plane_symbol(c.symbol, c.resolved_epsilon()), c.resolved_hbar(), N).matrix;
  ComplexMatrix mirrored = conjugate(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((i + j) % 2) mirrored(i, j) = -mirrored(i, j);
  const double defect = frobenius_norm(mirrored - m) / frobenius_norm(m);

  const auto spectrum = solve_operator(c).eigenvalues;
  std::vector<cplx> conj(spectrum.size());
  std::transform(spectrum.begin(), spectrum.end(), conj.begin(), [](cplx z) { return std::conj(z); });
  const double closure = oracle::pairing_distance(spectrum, conj);

  const Interval w = c.resolved_window();
  std::vector<cplx> interior;
  std::copy_if(spectrum.begin(), spectrum.end(), std::back_inserter(interior), [&](cplx z) { return w.contains(z.real()); });
  std::sort(interior.begin(), interior.end(), lexicographic_less);
  double max_imag = 0.0;
  for (std::size_t k = 0; k < std::min<std::size_t>(20, interior.size()); ++k)
    max_imag = std::max(max_imag, std::abs(interior[k].imag()));

  const bool ok = pt.symbol_pt && defect <= 1e-13 && pt.defect <= 1e-13 && closure <= 1e-9 && interior.size() >= 20 &&
                  max_imag <= 1e-6;
  return {ok, fmt::format("defect {:.1e} (<= 1e-13), conjugation closure {:.1e} (<= 1e-9), lowest 20 interior "
                          "max |Im| {:.1e} (<= 1e-6)",
                          std::max(defect, pt.defect), closure, max_imag)};
}

Verdict eigensolver_oracles() {
  std::mt19937_64 rng(20240601);
  double worst_charpoly = 0.0;
  double worst_trace = 0.0;
  double worst_det = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 8);
    const ComplexMatrix m = oracle::random_matrix(rng, n);
    const double norm = frobenius_norm(m);
    const auto ev = eigenvalues(m).eigenvalues;
    worst_charpoly = std::max(worst_charpoly, oracle::pairing_distance(ev, oracle::charpoly_eigenvalues(m)) / norm);
    cplx sum = 0.0;
    cplx prod = 1.0;
    cplx tr = 0.0;
    for (const cplx& z : ev) {
      sum += z;
      prod *= z;
    }
    for (std::size_t i = 0; i < n; ++i) tr += m(i, i);
    worst_trace = std::max(worst_trace, std::abs(sum - tr) / (static_cast<double>(n) * norm));
    worst_det = std::max(worst_det, std::abs(prod - oracle::determinant(m)) / std::pow(norm, double(n)));
  }
  double worst_herm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = oracle::random_hermitian(rng, 1 + static_cast<std::size_t>(trial % 8) * 5);
    for (const cplx& z : eigenvalues(h).eigenvalues) worst_herm = std::max(worst_herm, std::abs(z.imag()) / frobenius_norm(h));
  }
  const bool ok = worst_charpoly <= 1e-8 && worst_trace <= 1e-12 && worst_det <= 1e-10 && worst_herm <= 1e-12;
  return {ok, fmt::format("charpoly {:.1e} (<= 1e-8 |M|), trace {:.1e} (<= 1e-12 n|M|), det {:.1e} "
                          "(<= 1e-10 |M|^n), hermitian |Im| {:.1e} (<= 1e-12 |M|)",
                          worst_charpoly, worst_trace, worst_det, worst_herm)};
}

Verdict action_suite() {
  const double eps = 0.1;
  const double E = 0.7;
  const ActionMap closed(CylinderSymbol::circle(parse_circle_symbol("I ; cos(theta)"), eps), E);
  const LevelSet ls = closed.solve_level_set(E);
  double level_err = 0.0;
  for (std::size_t j = 0; j < ls.action.size(); ++j) {
    const double theta = 2 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(ls.action.size());
    level_err = std::max(level_err, std::abs(ls.action[j] - cplx(E, -eps * std::cos(theta))));
  }

  const CylinderSymbol fig1 = CylinderSymbol::circle(parse_circle_symbol("I ; cos(theta) + I^2"), 0.1231);
  const ActionMap am(fig1, 0.0);
  double inverse_err = 0.0;
  for (int k = -50; k <= 50; k += 5) {
    const double I = k / 66.0;
    inverse_err = std::max(inverse_err, std::abs(am.action_integral(am.invert_action(I)) - I));
  }

  const std::vector<double> eps_grid = {0.02, 0.04, 0.08};
  std::vector<double> dev;
  for (double e : eps_grid) {
    const CylinderSymbol s = CylinderSymbol::circle(parse_circle_symbol("I ; cos(theta) + I^2"), e);
    const ActionMap a(s, 0.3);
    double worst = 0.0;
    for (double I : {0.1, 0.3, 0.5}) worst = std::max(worst, std::abs(a.invert_action(I) - averaged_generator(s, I)));
    dev.push_back(worst);
  }
  const double slope = oracle::loglog_slope(eps_grid, dev);
  return {level_err <= 1e-11 && inverse_err <= 1e-10 && slope >= 1.9,
          fmt::format("level set {:.1e} (<= 1e-11), inverse {:.1e} (<= 1e-10), eps^2 order {:.3f} (>= 1.9)",
                      level_err, inverse_err, slope)};
}

Verdict weyl_ordering() {
  double worst = 0.0;
  // the ladder commutator fails on the last state, so only the block that
  // products of m + n factors cannot reach from it is compared
  for (std::size_t dim : {8u, 10u, 12u}) {
    const auto lp = ladder<double>(dim, 1.0 / 66);
    const ComplexMatrix X = lp.position();
    const ComplexMatrix Xi = lp.momentum();
    for (int m = 0; m <= 6; ++m)
      for (int n = 0; m + n <= 6; ++n) {
        const std::size_t keep = dim - static_cast<std::size_t>(std::max(m + n - 1, 0));
        worst = std::max(worst, max_abs_diff(mccoy_weyl(X, Xi, m, n).leading_block(keep, keep),
                                             oracle::full_symmetrization(X, Xi, m, n).leading_block(keep, keep)));
      }
  }
  // padded block of a quantized symbol against symmetrization on a larger space
  const PlaneSymbol s = parse_plane_symbol("x^2 + xi^2 ; x^3*xi + xi^2*x^2 - x", 0.2);
  const int N = 5;
  const auto lp = ladder<double>(12, 0.25);
  const ComplexMatrix X = lp.position();
  const ComplexMatrix Xi = lp.momentum();
  ComplexMatrix ref = oracle::full_symmetrization(X, Xi, 2, 0) + oracle::full_symmetrization(X, Xi, 0, 2);
  ref += (oracle::full_symmetrization(X, Xi, 3, 1) + oracle::full_symmetrization(X, Xi, 2, 2) -
          oracle::full_symmetrization(X, Xi, 1, 0)) *
         cplx(0.0, 0.2);
  const double block = max_abs_diff(quantize_plane(s, 0.25, N).matrix, ref.leading_block(N + 1, N + 1));
  return {worst <= 1e-12 && block <= 1e-12,
          fmt::format("McCoy vs symmetrization {:.1e}, padded block {:.1e} (<= 1e-12)", worst, block)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"exact unperturbed baselines", baselines},
      {"principal-exact convergence order", convergence_order},
      {"averaged predictor agreement", averaged_agreement},
      {"Maslov correction on the line", maslov},
      {"PT-symmetric realness", pt_realness},
      {"eigensolver oracles", eigensolver_oracles},
      {"action map analytic suite", action_suite},
      {"Weyl ordering oracle", weyl_ordering},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    fmt::print("criterion {}: {} - {}: {}\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first, v.detail);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
