#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bsq/action.hpp"
#include "bsq/eigensolver.hpp"
#include "bsq/experiment.hpp"
#include "bsq/truncated_operator.hpp"

namespace bsq {

// Shortest text that parses back to the same double.
std::string format_double(double v);

// {"basis", "N", "hbar", "epsilon", "padding", "dimension", "fingerprint",
//  "rows": [[[re, im], ...], ...]}
std::string operator_to_json(const TruncatedOperator& op);
// Inverse of operator_to_json. Only "rows" is required; ParseError on
// malformed JSON or ragged/non-numeric rows.
TruncatedOperator operator_from_json(std::string_view text);
// One line per matrix row: re,im,re,im,...
std::string operator_to_csv(const TruncatedOperator& op);

// Header re,im,residual; one line per eigenvalue in solver order.
std::string spectrum_to_csv(const SpectrumResult& s);

// Header k,re,im,rule,mode.
std::string prediction_to_csv(const QuantizationPrediction& p);
std::string prediction_to_json(const QuantizationPrediction& p);
// prediction_<rule>_<mode>.<ext>
std::string prediction_file_name(const QuantizationPrediction& p, std::string_view ext);

std::string report_to_json(const ExperimentReport& r);
std::string pt_report_to_json(const PtReport& r);

// gnuplot script drawing spectrum.csv against the prediction CSVs.
std::string plot_script(const ExperimentReport& r);

std::string read_file(const std::filesystem::path& path);
// Truncates and replaces path, creating missing parent directories. Throws
// ConfigError on I/O failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace bsq
