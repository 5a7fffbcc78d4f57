#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsq::cli {

// Entry point of the bsq tool. Returns the process exit code: 0 on success,
// 2 for configuration or parse errors, 3 for numeric failures.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses a flat "key = value" config file ('#' starts a comment line) into
// "--key=value" arguments. Throws bsq::ConfigError on malformed lines.
std::vector<std::string> config_file_arguments(const std::string& text);

}  // namespace bsq::cli
