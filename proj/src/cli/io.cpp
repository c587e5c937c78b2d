#include "io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>

#include <fmt/format.h>

namespace bohrlab::cli {

std::string tool_version() { return BOHRLAB_VERSION; }

std::string format_number(double x) { return fmt::format("{:.12g}", x); }

std::string format_number(std::optional<double> x) { return x ? format_number(*x) : std::string(); }

nlohmann::json json_number(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

std::string csv_header(const RunInfo& info) {
  return fmt::format("# bohrlab {}\n# command: {}\n# config: {}\n# seed: {}\n", tool_version(), info.command,
                     info.config.dump(), info.seed);
}

nlohmann::json json_envelope(const RunInfo& info, nlohmann::json result) {
  nlohmann::json out;
  out["tool"] = "bohrlab";
  out["version"] = tool_version();
  out["command"] = info.command;
  out["config"] = info.config;
  out["seed"] = info.seed;
  out["result"] = std::move(result);
  return out;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + path);
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path);
}

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw UsageError("not an integer: '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::vector<std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("expected a range a:b, got '" + text + "'");
  const std::int64_t a = parse_int(std::string_view(text).substr(0, colon));
  const std::int64_t b = parse_int(std::string_view(text).substr(colon + 1));
  if (b < a) throw UsageError("empty range '" + text + "'");
  if (b - a > 10'000'000) throw UsageError("range too long '" + text + "'");
  std::vector<std::int64_t> out;
  for (std::int64_t v = a; v <= b; ++v) out.push_back(v);
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  if (text.find(':') != std::string::npos) return parse_range(text);
  std::vector<std::int64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    out.push_back(parse_int(std::string_view(text).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

UnivariateSeries parse_series(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("coefficients are not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw UsageError("coefficients must be a non-empty JSON array");
  std::vector<Complex> coeffs;
  for (const auto& c : j) {
    if (c.is_number()) {
      coeffs.emplace_back(c.get<double>(), 0.0);
    } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
      coeffs.emplace_back(c[0].get<double>(), c[1].get<double>());
    } else {
      throw UsageError("each coefficient must be a number or a [re, im] pair");
    }
  }
  return UnivariateSeries(std::move(coeffs));
}

}  // namespace bohrlab::cli
