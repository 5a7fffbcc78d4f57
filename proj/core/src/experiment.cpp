#include "bsq/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bsq/errors.hpp"
#include "bsq/fingerprint.hpp"
#include "bsq/io.hpp"
#include "bsq/quantize_circle.hpp"
#include "bsq/quantize_fock.hpp"
#include "bsq/symbol_text.hpp"

namespace bsq {

namespace {

constexpr double kTrustedFraction = 0.8;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class F>
auto staged(const char* stage, F&& body) {
  try {
    return body();
  } catch (const NumericError& e) {
    if (!e.stage().empty()) throw;
    throw NumericError(e.what(), stage);
  }
}

std::string interval_text(const Interval& w) { return fmt::format("[{}, {}]", w.lo, w.hi); }

template <class Real>
SpectrumResult solve_in(const ExperimentConfig& cfg, double hbar, double eps, const EigenOptions& opts) {
  if (cfg.model == Model::circle)
    return eigenvalues(circle_matrix<Real>(parse_circle_symbol(cfg.symbol), Real(eps), Real(hbar), cfg.N), opts);
  return eigenvalues(plane_matrix<Real>(parse_plane_symbol(cfg.symbol, eps), Real(hbar), cfg.N), opts);
}

// Rectangular assignment minimizing total cost; rows <= cols. Returns the
// column assigned to each row.
std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = n ? cost[0].size() : 0;
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> assignment(n);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j]) assignment[p[j] - 1] = j - 1;
  return assignment;
}

PtReport pt_from(const ExperimentConfig& cfg, const PlaneSymbol& sym, const ComplexMatrix& m,
                 const std::vector<cplx>& spectrum) {
  PtReport r;
  r.symbol_pt = pt_symmetry_check(sym);
  double diff = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
      diff += std::norm(sign * std::conj(m(i, j)) - m(i, j));
    }
  const double norm = frobenius_norm(m);
  r.defect = norm > 0.0 ? std::sqrt(diff) / norm : 0.0;

  const Interval window = cfg.resolved_window();
  const Rectangle rect = cfg.effective_rect();
  for (const cplx& z : spectrum) {
    if (window.contains(z.real()) && rect.contains(z)) {
      ++r.in_window;
      r.max_abs_imag = std::max(r.max_abs_imag, std::abs(z.imag()));
    }
    double best = kInf;
    for (const cplx& w : spectrum) best = std::min(best, std::abs(std::conj(z) - w));
    r.conjugation_gap = std::max(r.conjugation_gap, best);
  }
  r.genuinely_complex = !r.symbol_pt && r.max_abs_imag > 1e-8;
  return r;
}

}  // namespace

const char* to_string(Model m) noexcept { return m == Model::circle ? "circle" : "line"; }
const char* to_string(Pairing p) noexcept { return p == Pairing::greedy ? "greedy" : "optimal"; }
const char* to_string(Precision p) noexcept {
  switch (p) {
    case Precision::standard: return "standard";
    case Precision::extended: return "extended";
    case Precision::double_double: return "double-double";
  }
  return "?";
}

Model parse_model(std::string_view s) {
  if (s == "circle") return Model::circle;
  if (s == "line") return Model::line;
  throw ConfigError(fmt::format("unknown model '{}' (expected circle or line)", s));
}

Pairing parse_pairing(std::string_view s) {
  if (s == "greedy") return Pairing::greedy;
  if (s == "optimal") return Pairing::optimal;
  throw ConfigError(fmt::format("unknown pairing '{}' (expected greedy or optimal)", s));
}

Precision parse_precision(std::string_view s) {
  if (s == "standard" || s == "double") return Precision::standard;
  if (s == "extended" || s == "long-double") return Precision::extended;
  if (s == "double-double" || s == "dd") return Precision::double_double;
  throw ConfigError(fmt::format("unknown precision '{}' (expected standard, extended or double-double)", s));
}

double ExperimentConfig::resolved_hbar() const {
  if (hbar) {
    if (!(*hbar > 0.0) || !std::isfinite(*hbar)) throw ConfigError("hbar must be finite and > 0");
    return *hbar;
  }
  if (N < 1) throw ConfigError("N must be >= 1");
  return 1.0 / N;
}

double ExperimentConfig::resolved_epsilon() const { return epsilon.resolve(resolved_hbar()); }

Interval ExperimentConfig::trusted_range() const {
  const double h = resolved_hbar();
  if (model == Model::circle) return {-kTrustedFraction * h * N, kTrustedFraction * h * N};
  return {0.0, kTrustedFraction * h * (2 * N + 1)};
}

Interval ExperimentConfig::resolved_window() const { return window ? *window : trusted_range(); }

Rectangle ExperimentConfig::effective_rect() const {
  Rectangle r = rect ? *rect : Rectangle{};
  const Interval w = resolved_window();
  r.re_min = std::max(r.re_min, w.lo);
  r.re_max = std::min(r.re_max, w.hi);
  return r;
}

void ExperimentConfig::validate() const {
  if (N < 8) throw ConfigError(fmt::format("N = {} is too small for comparisons (need N >= 8)", N));
  (void)resolved_epsilon();
  const Interval trusted = trusted_range();
  if (window) {
    if (!std::isfinite(window->lo) || !std::isfinite(window->hi) || !(window->lo <= window->hi))
      throw ConfigError("interior window must be a finite interval lo <= hi");
    const double slack = 1e-12 * (1.0 + std::abs(trusted.hi));
    if (window->lo < trusted.lo - slack || window->hi > trusted.hi + slack)
      throw ConfigError(fmt::format("interior window {} leaves the trusted range {}", interval_text(*window),
                                    interval_text(trusted)));
  }
  if (rect) {
    for (double v : {rect->re_min, rect->re_max, rect->im_min, rect->im_max})
      if (std::isnan(v)) throw ConfigError("rectangle bounds must not be NaN");
    if (rect->empty()) throw ConfigError("rectangle is empty");
  }
  if (effective_rect().empty()) throw ConfigError("rectangle does not meet the interior window");
  if (model == Model::circle) (void)parse_circle_symbol(symbol);
  else (void)parse_plane_symbol(symbol, resolved_epsilon());
}

std::string ExperimentConfig::canonical_text() const {
  const double eps = resolved_epsilon();
  const std::string sym = model == Model::circle ? to_text(parse_circle_symbol(symbol))
                                                 : to_text(parse_plane_symbol(symbol, eps));
  const Interval w = resolved_window();
  const Rectangle r = effective_rect();
  return fmt::format(
      "model={}\nsymbol={}\nN={}\nhbar={}\nepsilon={}\nwindow={},{}\nrect={},{},{},{}\npairing={}\nmaslov={}\n"
      "floquet_offset={}\nprecision={}\n",
      to_string(model), sym, N, resolved_hbar(), eps, w.lo, w.hi, r.re_min, r.re_max, r.im_min, r.im_max,
      to_string(pairing), maslov ? "on" : "off", floquet_offset, to_string(precision));
}

Comparison compare_spectra(const std::vector<cplx>& computed, const QuantizationPrediction& prediction,
                           const Interval& window, const Rectangle& rect, Pairing pairing) {
  Comparison out{prediction.rule, prediction.mode, {}, {}};
  auto in_scope = [&](cplx z) { return window.contains(z.real()) && rect.contains(z); };
  auto& s = out.summary;
  s.count_in_window = static_cast<std::size_t>(std::count_if(computed.begin(), computed.end(), in_scope));

  const auto& pts = prediction.points;
  for (const auto& p : pts) {
    double best = kInf;
    for (const cplx& z : computed) best = std::min(best, std::abs(z - p.lambda));
    s.hausdorff_directed = std::max(s.hausdorff_directed, best);
  }
  if (pts.empty()) s.hausdorff_directed = kNaN;

  std::vector<std::pair<std::size_t, std::size_t>> assigned;  // (prediction, computed)
  if (pairing == Pairing::greedy) {
    struct Candidate {
      double d;
      std::size_t i;
      std::size_t j;
    };
    std::vector<Candidate> cand;
    cand.reserve(pts.size() * computed.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < computed.size(); ++j) cand.push_back({std::abs(computed[j] - pts[i].lambda), i, j});
    std::sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
      if (a.d != b.d) return a.d < b.d;
      return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    std::vector<char> pred_used(pts.size()), comp_used(computed.size());
    for (const auto& c : cand) {
      if (pred_used[c.i] || comp_used[c.j]) continue;
      pred_used[c.i] = comp_used[c.j] = 1;
      assigned.emplace_back(c.i, c.j);
    }
  } else if (!pts.empty() && !computed.empty()) {
    const bool transpose = pts.size() > computed.size();
    const std::size_t rows = transpose ? computed.size() : pts.size();
    const std::size_t cols = transpose ? pts.size() : computed.size();
    std::vector<std::vector<double>> cost(rows, std::vector<double>(cols));
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) {
        const std::size_t i = transpose ? b : a;
        const std::size_t j = transpose ? a : b;
        cost[a][b] = std::abs(computed[j] - pts[i].lambda);
      }
    const auto col = hungarian(cost);
    for (std::size_t a = 0; a < rows; ++a) {
      if (transpose) assigned.emplace_back(col[a], a);
      else assigned.emplace_back(a, col[a]);
    }
  }

  for (const auto& [i, j] : assigned) {
    if (!in_scope(computed[j])) continue;
    out.pairs.push_back({pts[i].k, pts[i].lambda, computed[j], std::abs(computed[j] - pts[i].lambda)});
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const MatchedPair& a, const MatchedPair& b) { return a.k < b.k; });

  s.matched = out.pairs.size();
  s.unmatched = pts.size() - s.matched;
  if (out.pairs.empty()) {
    s.max_dist = s.mean_dist = kNaN;
  } else {
    double sum = 0.0;
    for (const auto& p : out.pairs) {
      s.max_dist = std::max(s.max_dist, p.distance);
      sum += p.distance;
    }
    s.mean_dist = sum / static_cast<double>(out.pairs.size());
  }
  return out;
}

const Comparison* ExperimentReport::find(QuantizationRule rule, PredictionMode mode) const noexcept {
  for (const auto& c : comparisons)
    if (c.rule == rule && c.mode == mode) return &c;
  return nullptr;
}

QuantizationRule ExperimentReport::headline_rule() const noexcept {
  return config.model == Model::line && config.maslov ? QuantizationRule::line_maslov : QuantizationRule::circle_k;
}

const Comparison& ExperimentReport::headline() const {
  const Comparison* c = find(headline_rule(), PredictionMode::principal_exact);
  if (!c) throw ConfigError("report has no principal_exact comparison for the configured rule");
  return *c;
}

TruncatedOperator build_operator(const ExperimentConfig& cfg) {
  const double hbar = cfg.resolved_hbar();
  const double eps = cfg.resolved_epsilon();
  if (cfg.model == Model::circle) return quantize_circle(parse_circle_symbol(cfg.symbol), eps, hbar, cfg.N);
  return quantize_plane(parse_plane_symbol(cfg.symbol, eps), hbar, cfg.N);
}

SpectrumResult solve_operator(const ExperimentConfig& cfg) {
  const double hbar = cfg.resolved_hbar();
  const double eps = cfg.resolved_epsilon();
  const EigenOptions opts;
  switch (cfg.precision) {
    case Precision::standard: return solve_in<double>(cfg, hbar, eps, opts);
    case Precision::extended: return solve_in<long double>(cfg, hbar, eps, opts);
    case Precision::double_double: return solve_in<DoubleDouble>(cfg, hbar, eps, opts);
  }
  throw ConfigError("unknown precision");
}

std::vector<QuantizationPrediction> predict(const ExperimentConfig& cfg) {
  const double hbar = cfg.resolved_hbar();
  const double eps = cfg.resolved_epsilon();
  const Interval w = cfg.resolved_window();
  const Rectangle rect = cfg.effective_rect();
  const CylinderSymbol cyl = cfg.model == Model::circle
                                 ? CylinderSymbol::circle(parse_circle_symbol(cfg.symbol), eps)
                                 : pullback_action_angle(parse_plane_symbol(cfg.symbol, eps));
  const ActionMap am(cyl, 0.5 * (w.lo + w.hi));

  std::vector<QuantizationRule> rules{QuantizationRule::circle_k};
  if (cfg.model == Model::line) rules.push_back(QuantizationRule::line_maslov);
  std::vector<QuantizationPrediction> out;
  for (QuantizationRule rule : rules)
    for (PredictionMode mode : {PredictionMode::averaged_first_order, PredictionMode::principal_exact})
      out.push_back(predict_spectrum(am, hbar, rule, mode, rect, cfg.floquet_offset));
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport r;
  r.config = cfg;
  r.hbar = cfg.resolved_hbar();
  r.epsilon = cfg.resolved_epsilon();
  r.window = cfg.resolved_window();
  r.rect = cfg.effective_rect();
  r.config_hash = fingerprint(cfg.canonical_text());
  if (auto w = EpsilonPolicy::warning(r.epsilon)) r.warnings.push_back(*w);

  const TruncatedOperator op = staged("quantize", [&] { return build_operator(cfg); });
  r.matrix_fingerprint = fingerprint(op.matrix);
  r.canonical_symbol = cfg.model == Model::circle ? to_text(parse_circle_symbol(cfg.symbol))
                                                  : to_text(parse_plane_symbol(cfg.symbol, r.epsilon));
  r.spectrum = staged("eigensolver", [&] { return solve_operator(cfg); });
  if (r.spectrum.max_residual() > r.spectrum.tolerance)
    r.warnings.push_back(fmt::format("largest eigenpair residual {} exceeds the tolerance {}",
                                     r.spectrum.max_residual(), r.spectrum.tolerance));
  r.predictions = staged("predict", [&] { return predict(cfg); });
  staged("compare", [&] {
    for (const auto& p : r.predictions)
      r.comparisons.push_back(compare_spectra(r.spectrum.eigenvalues, p, r.window, r.rect, cfg.pairing));
    return 0;
  });
  if (cfg.model == Model::line) {
    r.pt = staged("pt", [&] {
      return pt_from(cfg, parse_plane_symbol(cfg.symbol, r.epsilon), op.matrix, r.spectrum.eigenvalues);
    });
  }

  if (!cfg.output_dir.empty()) {
    const auto& dir = cfg.output_dir;
    write_file(dir / "spectrum.csv", spectrum_to_csv(r.spectrum));
    for (const auto& p : r.predictions) {
      write_file(dir / prediction_file_name(p, "csv"), prediction_to_csv(p));
      write_file(dir / prediction_file_name(p, "json"), prediction_to_json(p));
    }
    write_file(dir / "report.json", report_to_json(r));
    write_file(dir / "plot.gp", plot_script(r));
  }
  return r;
}

std::vector<ExperimentConfig> figure_configs(const std::filesystem::path& output_dir) {
  struct Spec {
    Model model;
    const char* symbol;
    std::optional<Interval> zoom;
  };
  const Spec specs[9] = {
      {Model::circle, "I ; cos(theta) + I^2", std::nullopt},
      {Model::circle, "I ; cos(theta) + I^2", Interval{-0.25, 0.25}},
      {Model::circle, "I ; cos(theta) + I^3", std::nullopt},
      {Model::circle, "I ; cos(theta) + I^3", Interval{-0.25, 0.25}},
      {Model::line, "x^2 + xi^2 ; x^2", std::nullopt},
      {Model::line, "x^2 + xi^2 ; x^2", Interval{0.0, 0.5}},
      {Model::line, "x^2 + xi^2 ; x^2 + x^3", std::nullopt},
      {Model::line, "x^2 + xi^2 ; x^4", std::nullopt},
      {Model::line, "x^2 + xi^2 ; x^4", Interval{0.0, 0.5}},
  };
  std::vector<ExperimentConfig> out;
  for (int i = 0; i < 9; ++i) {
    ExperimentConfig c;
    c.model = specs[i].model;
    c.symbol = specs[i].symbol;
    c.N = 66;
    c.epsilon = EpsilonPolicy::hbar_power(0.5);
    c.window = specs[i].zoom;
    c.label = fmt::format("figure_{}", i + 1);
    if (!output_dir.empty()) c.output_dir = output_dir / c.label;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<FigureBundle> reproduce_figures(const std::filesystem::path& output_dir, Precision precision) {
  std::vector<FigureBundle> out;
  int figure = 1;
  for (ExperimentConfig cfg : figure_configs(output_dir)) {
    cfg.precision = precision;
    const std::string caption =
        fmt::format("{} model, symbol \"{}\", {}", to_string(cfg.model), cfg.symbol, cfg.window ? "zoomed window" : "full window");
    out.push_back({figure++, caption, run_experiment(cfg)});
  }
  return out;
}

PtReport pt_verify(const ExperimentConfig& cfg) {
  if (cfg.model != Model::line) throw ConfigError("pt-verify needs the line model");
  const double eps = cfg.resolved_epsilon();
  const PlaneSymbol sym = parse_plane_symbol(cfg.symbol, eps);
  const TruncatedOperator op = staged("quantize", [&] { return quantize_plane(sym, cfg.resolved_hbar(), cfg.N); });
  const SpectrumResult s = staged("eigensolver", [&] { return solve_operator(cfg); });
  return pt_from(cfg, sym, op.matrix, s.eigenvalues);
}

}  // namespace bsq
