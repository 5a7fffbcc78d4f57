#include "bsq/io.hpp"

#include <fmt/format.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "bsq/errors.hpp"
#include "bsq/version.hpp"

namespace bsq {

namespace {

using Json = nlohmann::ordered_json;

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json rect_json(const Rectangle& r) {
  return Json{{"re_min", r.re_min}, {"re_max", r.re_max}, {"im_min", r.im_min}, {"im_max", r.im_max}};
}

Json summary_json(const ComparisonSummary& s) {
  return Json{{"max_dist", s.max_dist},
              {"mean_dist", s.mean_dist},
              {"count_in_window", s.count_in_window},
              {"hausdorff_directed", s.hausdorff_directed},
              {"matched", s.matched},
              {"unmatched", s.unmatched}};
}

Json pt_json(const PtReport& r) {
  return Json{{"symbol_pt", r.symbol_pt},
              {"defect", r.defect},
              {"max_abs_imag", r.max_abs_imag},
              {"conjugation_gap", r.conjugation_gap},
              {"in_window", r.in_window},
              {"genuinely_complex", r.genuinely_complex}};
}

Json prediction_json(const QuantizationPrediction& p) {
  Json points = Json::array();
  for (const auto& pt : p.points) points.push_back(Json{{"k", pt.k}, {"lambda", complex_json(pt.lambda)}});
  return Json{{"rule", to_string(p.rule)},
              {"mode", to_string(p.mode)},
              {"hbar", p.hbar},
              {"epsilon", p.epsilon},
              {"floquet_offset", p.floquet_offset},
              {"points", std::move(points)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) { return fmt::format("{}", v); }

std::string operator_to_json(const TruncatedOperator& op) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < op.matrix.rows(); ++i) {
    Json row = Json::array();
    for (const cplx& v : op.matrix.row(i)) row.push_back(complex_json(v));
    rows.push_back(std::move(row));
  }
  const Json j{{"basis", to_string(op.basis.kind)},
               {"N", op.basis.N},
               {"hbar", op.hbar},
               {"epsilon", op.epsilon},
               {"padding", op.basis.padding},
               {"dimension", op.matrix.rows()},
               {"fingerprint", op.symbol_fingerprint},
               {"rows", std::move(rows)}};
  return dump(j);
}

TruncatedOperator operator_from_json(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("operator JSON: ") + e.what(), e.byte);
  }
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array())
    throw ParseError("operator JSON: missing \"rows\" array", 0);
  const auto& rows = j["rows"];
  const std::size_t n = rows.size();
  if (n == 0) throw ParseError("operator JSON: empty matrix", 0);

  TruncatedOperator op;
  op.matrix = ComplexMatrix(n, rows[0].is_array() ? rows[0].size() : 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != op.matrix.cols())
      throw ParseError(fmt::format("operator JSON: row {} has the wrong length", i), 0);
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      const auto& e = rows[i][k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError(fmt::format("operator JSON: entry ({}, {}) is not [re, im]", i, k), 0);
      op.matrix(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
    }
  }
  try {
    if (j.contains("basis")) {
      const auto kind = j["basis"].get<std::string>();
      if (kind == "fourier") op.basis.kind = BasisKind::fourier;
      else if (kind == "fock") op.basis.kind = BasisKind::fock;
      else throw ParseError("operator JSON: unknown basis '" + kind + "'", 0);
    }
    if (j.contains("N")) op.basis.N = j["N"].get<int>();
    if (j.contains("padding")) op.basis.padding = j["padding"].get<int>();
    if (j.contains("hbar")) op.hbar = j["hbar"].get<double>();
    if (j.contains("epsilon")) op.epsilon = j["epsilon"].get<double>();
    if (j.contains("fingerprint")) op.symbol_fingerprint = j["fingerprint"].get<std::string>();
  } catch (const Json::type_error& e) {
    throw ParseError(std::string("operator JSON: ") + e.what(), 0);
  }
  if (j.contains("N") && j.contains("basis") && op.basis.dimension() != n)
    throw ParseError("operator JSON: N does not match the number of rows", 0);
  return op;
}

std::string operator_to_csv(const TruncatedOperator& op) {
  std::string out;
  for (std::size_t i = 0; i < op.matrix.rows(); ++i) {
    bool first = true;
    for (const cplx& v : op.matrix.row(i)) {
      fmt::format_to(std::back_inserter(out), "{}{},{}", first ? "" : ",", v.real(), v.imag());
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string spectrum_to_csv(const SpectrumResult& s) {
  std::string out = "re,im,residual\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
    fmt::format_to(std::back_inserter(out), "{},{},{}\n", s.eigenvalues[k].real(), s.eigenvalues[k].imag(),
                   s.residuals[k]);
  return out;
}

std::string prediction_to_csv(const QuantizationPrediction& p) {
  std::string out = "k,re,im,rule,mode\n";
  for (const auto& pt : p.points)
    fmt::format_to(std::back_inserter(out), "{},{},{},{},{}\n", pt.k, pt.lambda.real(), pt.lambda.imag(),
                   to_string(p.rule), to_string(p.mode));
  return out;
}

std::string prediction_to_json(const QuantizationPrediction& p) { return dump(prediction_json(p)); }

std::string prediction_file_name(const QuantizationPrediction& p, std::string_view ext) {
  return fmt::format("prediction_{}_{}.{}", to_string(p.rule), to_string(p.mode), ext);
}

std::string pt_report_to_json(const PtReport& r) { return dump(pt_json(r)); }

std::string report_to_json(const ExperimentReport& r) {
  const ExperimentConfig& c = r.config;
  Json config{{"label", c.label},
              {"model", to_string(c.model)},
              {"symbol", c.symbol},
              {"canonical_symbol", r.canonical_symbol},
              {"N", c.N},
              {"hbar", r.hbar},
              {"hbar_policy", c.hbar ? "explicit" : "one_over_N"},
              {"epsilon", r.epsilon},
              {"epsilon_policy", c.epsilon.mode == EpsilonPolicy::Mode::fixed ? "fixed" : "hbar_power"},
              {"epsilon_policy_value", c.epsilon.value},
              {"window", Json::array({r.window.lo, r.window.hi})},
              {"window_source", c.window ? "user" : "default 0.8 of truncation range"},
              {"rect", rect_json(r.rect)},
              {"pairing", to_string(c.pairing)},
              {"maslov", c.maslov},
              {"floquet_offset", c.floquet_offset},
              {"precision", to_string(c.precision)}};

  Json comparisons = Json::array();
  for (const auto& cmp : r.comparisons) {
    Json pairs = Json::array();
    for (const auto& p : cmp.pairs)
      pairs.push_back(Json{{"k", p.k},
                           {"computed", complex_json(p.computed)},
                           {"predicted", complex_json(p.predicted)},
                           {"distance", p.distance}});
    comparisons.push_back(Json{{"rule", to_string(cmp.rule)},
                               {"mode", to_string(cmp.mode)},
                               {"summary", summary_json(cmp.summary)},
                               {"pairs", std::move(pairs)}});
  }

  Json j{{"config", std::move(config)},
         {"provenance",
          Json{{"config_hash", r.config_hash},
               {"matrix_fingerprint", r.matrix_fingerprint},
               {"spectrum_fingerprint", r.spectrum.source_fingerprint},
               {"versions",
                Json{{"bsq", kVersion},
                     {"symbol_core", kVersion},
                     {"quantize", kVersion},
                     {"eigensolver", kVersion},
                     {"action_quantization", kVersion},
                     {"experiments", kVersion}}}}},
         {"spectrum",
          Json{{"count", r.spectrum.size()},
               {"max_residual", r.spectrum.max_residual()},
               {"tolerance", r.spectrum.tolerance},
               {"iterations", r.spectrum.iterations}}},
         {"headline", Json{{"rule", to_string(r.headline_rule())},
                           {"mode", to_string(PredictionMode::principal_exact)},
                           {"summary", summary_json(r.headline().summary)}}},
         {"comparisons", std::move(comparisons)}};
  if (r.pt) j["pt"] = pt_json(*r.pt);
  j["warnings"] = r.warnings;
  return dump(j);
}

std::string plot_script(const ExperimentReport& r) {
  std::string out;
  auto line = [&out](std::string_view s) {
    out += s;
    out += '\n';
  };
  line("# gnuplot script; run from this directory: gnuplot plot.gp");
  line("set datafile separator ','");
  line("set terminal pngcairo size 1000,700");
  line("set output 'plot.png'");
  line("set key outside right");
  line("set xlabel 'Re lambda'");
  line("set ylabel 'Im lambda'");
  out += fmt::format("set title \"{} N={} hbar={} eps={}\"\n", r.canonical_symbol, r.config.N, r.hbar, r.epsilon);
  out += fmt::format("set arrow 1 from {0},graph 0 to {0},graph 1 nohead dashtype 2\n", r.window.lo);
  out += fmt::format("set arrow 2 from {0},graph 0 to {0},graph 1 nohead dashtype 2\n", r.window.hi);
  out += "plot 'spectrum.csv' every ::1 using 1:2 with points pt 7 ps 0.6 title 'computed'";
  int style = 6;
  for (const auto& p : r.predictions) {
    out += fmt::format(", \\\n     '{}' every ::1 using 2:3 with points pt {} ps 0.9 title '{} {}'",
                       prediction_file_name(p, "csv"), style, to_string(p.rule), to_string(p.mode));
    style += 2;
  }
  out += '\n';
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw ConfigError("cannot create " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw ConfigError("write failed for " + path.string());
}

}  // namespace bsq
