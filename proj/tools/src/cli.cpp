#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "bsq/errors.hpp"
#include "bsq/experiment.hpp"
#include "bsq/io.hpp"
#include "bsq/version.hpp"

namespace bsq::cli {

namespace {

struct Options {
  std::string model;  // circle unless given; pt-verify defaults to line
  std::string symbol;
  int N = 66;
  std::optional<double> hbar;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::string rect;
  std::string window;
  std::string out;
  std::string pairing = "greedy";
  std::string maslov = "on";
  int floquet_offset = 0;
  std::string precision = "extended";
  std::string matrix;
  std::string config;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    std::string item = text.substr(start, end - start);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    double v = 0.0;
    const char* first = item.data();
    if (!item.empty() && item[0] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
      throw ConfigError(fmt::format("--{}: '{}' is not a number", what, item));
    values.push_back(v);
    start = end + 1;
  }
  if (values.size() != expected)
    throw ConfigError(fmt::format("--{} expects {} comma-separated numbers, got {}", what, expected, values.size()));
  return values;
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig c;
  c.model = o.model.empty() ? Model::circle : parse_model(o.model);
  if (!o.symbol.empty()) c.symbol = o.symbol;
  else c.symbol = c.model == Model::circle ? "I ; cos(theta) + I^2" : "x^2 + xi^2 ; x^2";
  c.N = o.N;
  c.hbar = o.hbar;
  if (o.epsilon) c.epsilon = EpsilonPolicy::fixed(*o.epsilon);
  else if (o.delta) c.epsilon = EpsilonPolicy::hbar_power(*o.delta);
  if (!o.rect.empty()) {
    const auto v = parse_numbers(o.rect, 4, "rect");
    c.rect = Rectangle{v[0], v[1], v[2], v[3]};
  }
  if (!o.window.empty()) {
    const auto v = parse_numbers(o.window, 2, "window");
    c.window = Interval{v[0], v[1]};
  }
  c.pairing = parse_pairing(o.pairing);
  c.maslov = o.maslov == "on";
  c.floquet_offset = o.floquet_offset;
  c.precision = parse_precision(o.precision);
  c.output_dir = o.out;
  return c;
}

void emit(const std::string& out_dir, const std::string& name, const std::string& contents, std::ostream& out) {
  if (out_dir.empty()) out << contents;
  else write_file(std::filesystem::path(out_dir) / name, contents);
}

std::string summary_line(const Comparison& c) {
  const auto& s = c.summary;
  return fmt::format("{:<12} {:<21} max_dist={:.3e} mean_dist={:.3e} hausdorff={:.3e} count_in_window={} matched={}",
                     to_string(c.rule), to_string(c.mode), s.max_dist, s.mean_dist, s.hausdorff_directed,
                     s.count_in_window, s.matched);
}

int cmd_quantize(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o);
  const TruncatedOperator op = build_operator(cfg);
  if (o.out.empty()) {
    out << operator_to_json(op);
  } else {
    emit(o.out, "operator.json", operator_to_json(op), out);
    emit(o.out, "operator.csv", operator_to_csv(op), out);
  }
  return 0;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  SpectrumResult s;
  if (!o.matrix.empty()) {
    s = eigenvalues(operator_from_json(read_file(o.matrix)).matrix);
  } else {
    s = solve_operator(make_config(o));
  }
  emit(o.out, "spectrum.csv", spectrum_to_csv(s), out);
  return 0;
}

int cmd_predict(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o);
  cfg.validate();
  const auto predictions = predict(cfg);
  if (o.out.empty()) {
    bool header = true;
    for (const auto& p : predictions) {
      std::string csv = prediction_to_csv(p);
      if (!header) csv.erase(0, csv.find('\n') + 1);
      out << csv;
      header = false;
    }
    return 0;
  }
  for (const auto& p : predictions) {
    emit(o.out, prediction_file_name(p, "csv"), prediction_to_csv(p), out);
    emit(o.out, prediction_file_name(p, "json"), prediction_to_json(p), out);
  }
  return 0;
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  const ExperimentReport r = run_experiment(make_config(o));
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  out << fmt::format("{} N={} hbar={} eps={} window=[{}, {}] config={}\n", r.canonical_symbol, r.config.N, r.hbar,
                     r.epsilon, r.window.lo, r.window.hi, r.config_hash);
  for (const auto& c : r.comparisons) out << summary_line(c) << '\n';
  if (r.pt)
    out << fmt::format("pt symbol={} defect={:.3e} max_abs_imag={:.3e}\n", r.pt->symbol_pt, r.pt->defect,
                       r.pt->max_abs_imag);
  return 0;
}

int cmd_figures(const Options& o, std::ostream& out) {
  const std::string dir = o.out.empty() ? std::string("figures") : o.out;
  for (const auto& b : reproduce_figures(dir, parse_precision(o.precision))) {
    const auto& h = b.report.headline();
    out << fmt::format("figure {} ({}): {} max_dist={:.3e} count_in_window={}\n", b.figure, b.caption,
                       to_string(b.report.headline_rule()), h.summary.max_dist, h.summary.count_in_window);
  }
  out << "bundles written to " << dir << '\n';
  return 0;
}

int cmd_pt_verify(const Options& o, std::ostream& out) {
  if (o.model == "circle") throw ConfigError("pt-verify needs --model line");
  Options line = o;
  line.model = "line";
  const PtReport r = pt_verify(make_config(line));
  const std::string json = pt_report_to_json(r);
  if (!o.out.empty()) emit(o.out, "pt.json", json, out);
  out << json;
  return 0;
}

void move_config_file_arguments(std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    std::string path;
    std::size_t span = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      span = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      span = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + span));
    const auto extra = config_file_arguments(read_file(path));
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    return;
  }
}

}  // namespace

std::vector<std::string> config_file_arguments(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t\r"));
    s.erase(s.find_last_not_of(" \t\r") + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    if (key.empty() || key == "config") throw ConfigError(fmt::format("config line {}: invalid key", lineno));
    out.push_back("--" + key + "=" + value);
  }
  return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex spectra of non-selfadjoint semiclassical operators: truncated quantization and "
               "Bohr-Sommerfeld predictions",
               "bsq"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Options o;
  app.add_option("--model", o.model, "circle or line")->check(CLI::IsMember({"circle", "line"}));
  app.add_option("--symbol", o.symbol, "symbol text \"F ; Q\" (Q alone keeps the default F)");
  app.add_option("--N", o.N, "truncation size")->check(CLI::NonNegativeNumber);
  app.add_option("--hbar", o.hbar, "semiclassical parameter (default 1/N)");
  auto* delta = app.add_option("--delta", o.delta, "epsilon = hbar^delta (default 0.5)");
  auto* eps = app.add_option("--epsilon", o.epsilon, "fixed epsilon");
  delta->excludes(eps);
  app.add_option("--rect", o.rect, "prediction rectangle re_min,re_max,im_min,im_max");
  app.add_option("--window", o.window, "interior window lo,hi on Re(lambda)");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--pairing", o.pairing, "greedy or optimal")->check(CLI::IsMember({"greedy", "optimal"}));
  app.add_option("--maslov", o.maslov, "line model headline rule: on (k+1/2) or off (k)")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--floquet-offset", o.floquet_offset, "integer offset J in hbar(k - J)");
  app.add_option("--precision", o.precision, "standard, extended or double-double");
  app.add_option("--matrix", o.matrix, "spectrum: operator JSON file to diagonalize")->check(CLI::ExistingFile);
  app.add_option("--config", o.config, "flat key = value file mirroring the flags");

  app.add_subcommand("quantize", "truncated matrix of the operator (JSON, plus CSV with --out)")->fallthrough();
  app.add_subcommand("spectrum", "eigenvalues as CSV re,im,residual")->fallthrough();
  app.add_subcommand("predict", "Bohr-Sommerfeld predictions as CSV k,re,im,rule,mode")->fallthrough();
  app.add_subcommand("compare", "full pipeline with report and plot script")->fallthrough();
  app.add_subcommand("reproduce-figures", "the nine figure bundles")->fallthrough();
  app.add_subcommand("pt-verify", "PT-symmetry checks for the line model")->fallthrough();

  std::vector<std::string> args = raw_args;
  try {
    move_config_file_arguments(args);
  } catch (const Error& e) {
    err << "bsq: " << e.what() << '\n';
    return 2;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (cmd == "quantize") return cmd_quantize(o, out);
    if (cmd == "spectrum") return cmd_spectrum(o, out);
    if (cmd == "predict") return cmd_predict(o, out);
    if (cmd == "compare") return cmd_compare(o, out, err);
    if (cmd == "reproduce-figures") return cmd_figures(o, out);
    return cmd_pt_verify(o, out);
  } catch (const NumericError& e) {
    std::string msg = e.what();
    const std::string stage = e.stage().empty() ? cmd : e.stage();
    if (!e.stage().empty()) msg.erase(0, e.stage().size() + 2);
    err << "bsq: numeric failure in stage '" << stage << "': " << msg << '\n';
    return 3;
  } catch (const Error& e) {
    err << "bsq: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "bsq: internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace bsq::cli
