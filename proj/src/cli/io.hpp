#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bohrlab/univariate.hpp"

namespace bohrlab::cli {

/// Thrown for malformed user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Run metadata written into every output.
struct RunInfo {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
};

std::string tool_version();

/// 12 significant digits, '.' decimal separator regardless of locale.
std::string format_number(double x);
std::string format_number(std::optional<double> x);

/// JSON number, or null when x is not finite.
nlohmann::json json_number(double x);

/// Comment header for CSV files: tool version, command, config and seed.
std::string csv_header(const RunInfo& info);

/// {"tool", "version", "command", "config", "seed"} plus a "result" member.
nlohmann::json json_envelope(const RunInfo& info, nlohmann::json result);

/// Writes to path, or to stdout when path is empty.
void write_output(const std::string& path, const std::string& text);

/// Parses "a:b" (inclusive) into a list of integers.
std::vector<std::int64_t> parse_range(const std::string& text);
/// Parses "2,3,4" or "a:b" into integers.
std::vector<std::int64_t> parse_int_list(const std::string& text);
/// Parses a JSON coefficient array: numbers or [re, im] pairs.
UnivariateSeries parse_series(const std::string& json_text);

}  // namespace bohrlab::cli
