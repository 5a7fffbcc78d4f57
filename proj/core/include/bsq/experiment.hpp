#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bsq/action.hpp"
#include "bsq/eigensolver.hpp"
#include "bsq/symbol.hpp"
#include "bsq/truncated_operator.hpp"

namespace bsq {

enum class Model { circle, line };
enum class Pairing { greedy, optimal };
// Arithmetic used to assemble and diagonalize the truncated matrix.
enum class Precision { standard, extended, double_double };

const char* to_string(Model m) noexcept;
const char* to_string(Pairing p) noexcept;
const char* to_string(Precision p) noexcept;
Model parse_model(std::string_view s);
Pairing parse_pairing(std::string_view s);
Precision parse_precision(std::string_view s);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ExperimentConfig {
  Model model = Model::circle;
  std::string symbol = "I ; cos(theta) + I^2";
  int N = 66;
  std::optional<double> hbar;  // 1/N when unset
  EpsilonPolicy epsilon = EpsilonPolicy::hbar_power(0.5);
  std::optional<Rectangle> rect;     // unrestricted when unset
  std::optional<Interval> window;    // interior window on Re(lambda)
  Pairing pairing = Pairing::greedy;
  bool maslov = true;                // line model: headline rule is line_maslov
  int floquet_offset = 0;
  Precision precision = Precision::extended;
  std::filesystem::path output_dir;  // no files written when empty
  std::string label;

  double resolved_hbar() const;
  double resolved_epsilon() const;
  // Re(lambda) range where truncation is trusted: |Re| <= 0.8 hbar N on the
  // circle, [0, 0.8 hbar (2N+1)] on the line.
  Interval trusted_range() const;
  Interval resolved_window() const;
  // rect with its real extent clipped to the interior window.
  Rectangle effective_rect() const;
  // Throws ConfigError on any violated precondition.
  void validate() const;
  // Stable text of every field that influences the numbers; hashed into the
  // report provenance.
  std::string canonical_text() const;
};

struct MatchedPair {
  int k;
  cplx predicted;
  cplx computed;
  double distance;
};

struct ComparisonSummary {
  double max_dist = 0.0;
  double mean_dist = 0.0;
  std::size_t count_in_window = 0;  // computed eigenvalues inside window and rect
  double hausdorff_directed = 0.0;  // max over predictions of the nearest computed distance
  std::size_t matched = 0;
  std::size_t unmatched = 0;        // predictions left without a partner
};

struct Comparison {
  QuantizationRule rule;
  PredictionMode mode;
  std::vector<MatchedPair> pairs;
  ComparisonSummary summary;
};

// Pairs predictions with computed eigenvalues (each computed value used at
// most once) and keeps the pairs whose computed member lies in window and
// rect. Greedy pairing takes globally ascending distances; optimal pairing
// minimizes the total distance.
Comparison compare_spectra(const std::vector<cplx>& computed, const QuantizationPrediction& prediction,
                           const Interval& window, const Rectangle& rect, Pairing pairing = Pairing::greedy);

struct PtReport {
  bool symbol_pt = false;
  double defect = 0.0;             // ||D conj(M) D - M||_F / ||M||_F, D = diag((-1)^alpha)
  double max_abs_imag = 0.0;       // over eigenvalues in the interior window
  double conjugation_gap = 0.0;    // max over lambda of min |conj(lambda) - mu|
  std::size_t in_window = 0;
  bool genuinely_complex = false;  // symbol not PT and spectrum off the real axis
};

struct ExperimentReport {
  ExperimentConfig config;
  double hbar = 0.0;
  double epsilon = 0.0;
  Interval window;
  Rectangle rect;
  std::string canonical_symbol;
  std::string matrix_fingerprint;
  std::string config_hash;
  SpectrumResult spectrum;
  std::vector<QuantizationPrediction> predictions;
  std::vector<Comparison> comparisons;
  std::optional<PtReport> pt;
  std::vector<std::string> warnings;

  const Comparison* find(QuantizationRule rule, PredictionMode mode) const noexcept;
  // principal_exact under the configured rule.
  const Comparison& headline() const;
  QuantizationRule headline_rule() const noexcept;
};

// Matrix of the configured operator at the configured precision, and its
// spectrum. Exposed separately for the quantize/spectrum subcommands.
TruncatedOperator build_operator(const ExperimentConfig& cfg);
SpectrumResult solve_operator(const ExperimentConfig& cfg);

// Predictions for every (rule, mode) that applies to the model: circle_k on
// the circle, circle_k and line_maslov on the line, both modes each.
std::vector<QuantizationPrediction> predict(const ExperimentConfig& cfg);

// Full quantize -> solve -> predict -> compare pipeline. Numeric failures are
// re-raised as NumericError tagged with the failing stage. Writes
// spectrum.csv, prediction_<rule>_<mode>.{csv,json}, report.json and plot.gp
// under cfg.output_dir when it is set.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

struct FigureBundle {
  int figure;
  std::string caption;
  ExperimentReport report;
};

// The nine figure configurations (five distinct symbols). Each bundle goes to
// output_dir/figure_<n> when output_dir is non-empty.
std::vector<ExperimentConfig> figure_configs(const std::filesystem::path& output_dir = {});
std::vector<FigureBundle> reproduce_figures(const std::filesystem::path& output_dir = {},
                                            Precision precision = Precision::extended);

// Requires model == line.
PtReport pt_verify(const ExperimentConfig& cfg);

}  // namespace bsq
