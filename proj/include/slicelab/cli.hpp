#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace slicelab {

inline constexpr const char* kVersion = "slicelab 1.0.0";

enum ExitCode : int { exit_ok = 0, exit_inequality = 1, exit_input = 2, exit_tolerance = 3 };

/// Serialized result of one CLI run. No timing is recorded, so equal
/// (command, inputs, seed, version) give byte-identical output.
struct RunReport {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::string status = "ok";

  nlohmann::json to_json() const;
  /// Flattened "key,value" rows; numbers printed with 17 significant digits.
  std::string to_csv() const;
};

/// Reads a JSON spec given inline (leading '{' or '[') or as a file path.
/// Syntax errors carry the line and column of the offending token.
nlohmann::json load_spec(const std::string& text, const std::string& what);

/// Parses "axis:i" or a comma-separated vector; the result is normalized.
std::vector<double> parse_direction(const std::string& text, int n);

/// Entry point shared by the executable and the tests. The report goes to
/// --out when given, else to `out`; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace slicelab
