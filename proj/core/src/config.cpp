#include "ncspectra/config.hpp"

#include <algorithm>
#include <boost/algorithm/string/trim.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ncspectra/error.hpp"

namespace ncspectra {

namespace {

[[noreturn]] void fail(std::string_view key, std::string_view value, std::string_view expected) {
  std::ostringstream os;
  os << "invalid value '" << value << "' for " << key << " (expected " << expected << ")";
  throw Error(ErrorCode::ConfigError, os.str());
}

std::string trimmed(std::string_view text) {
  return boost::algorithm::trim_copy(std::string(text));
}

double parse_real(std::string_view key, std::string_view text) {
  const std::string t = trimmed(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    fail(key, text, "a finite real");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  const std::string t = trimmed(text);
  int v = 0;
  const char* first = t.data();
  if (!t.empty() && t.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) fail(key, text, "an integer");
  return v;
}

bool parse_switch(std::string_view key, std::string_view text) {
  const std::string t = trimmed(text);
  if (t == "on" || t == "true" || t == "1") return true;
  if (t == "off" || t == "false" || t == "0") return false;
  fail(key, text, "on|off");
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is{std::string(text)};
  while (std::getline(is, item, ',')) parts.push_back(trimmed(item));
  if (!text.empty() && text.back() == ',') parts.emplace_back();
  return parts;
}

}  // namespace

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (const auto& part : split_list(text)) out.push_back(parse_real("theta", part));
  if (out.empty()) fail("theta", text, "a non-empty comma-separated list");
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (const auto& part : split_list(text)) out.push_back(parse_int("m", part));
  if (out.empty()) fail("m", text, "a non-empty comma-separated list");
  return out;
}

std::string_view to_string(OutputFormat format) noexcept {
  return format == OutputFormat::Json ? "json" : "csv";
}

int RunConfig::degree_for(int angular) const noexcept {
  return degree ? *degree : std::max(1, std::abs(angular));
}

void RunConfig::validate() const {
  if (theta.empty()) throw Error(ErrorCode::ConfigError, "theta list is empty");
  if (m.empty()) throw Error(ErrorCode::ConfigError, "m list is empty");
  if (n < 0) throw Error(ErrorCode::ConfigError, "n must be >= 0");
  if (degree && (*degree < 1 || *degree > 3)) {
    throw Error(ErrorCode::ConfigError, "degree must be in 1..3");
  }
  if (family == Family::EvenPower && !(a > 0.0)) {
    throw Error(ErrorCode::ConfigError, "even family needs a > 0 (confining)");
  }
  if (grid_points != 0 && grid_points < 200) {
    throw Error(ErrorCode::ConfigError, "grid_points must be >= 200");
  }
}

void apply_setting(RunConfig& config, std::string_view key_in, std::string_view value) {
  const std::string key = trimmed(key_in);
  const std::string v = trimmed(value);
  if (key == "family") {
    config.family = parse_family(v);  // InvalidFamily names the allowed spellings
  } else if (key == "a") {
    config.a = parse_real(key, v);
  } else if (key == "b") {
    config.b = parse_real(key, v);
  } else if (key == "c") {
    config.c = parse_real(key, v);
  } else if (key == "theta") {
    config.theta = parse_real_list(v);
  } else if (key == "m") {
    config.m = parse_int_list(v);
  } else if (key == "n") {
    config.n = parse_int(key, v);
  } else if (key == "degree") {
    config.degree = parse_int(key, v);
  } else if (key == "mode") {
    if (v == "paper") {
      config.mode = SignMode::Literal;
    } else if (v == "rederived") {
      config.mode = SignMode::Normalizable;
    } else {
      fail(key, v, "paper|rederived");
    }
  } else if (key == "oracle") {
    config.oracle = parse_switch(key, v);
  } else if (key == "format") {
    if (v == "json") {
      config.format = OutputFormat::Json;
    } else if (v == "csv") {
      config.format = OutputFormat::Csv;
    } else {
      fail(key, v, "json|csv");
    }
  } else if (key == "out") {
    config.out = v;
  } else if (key == "timestamp") {
    config.timestamp = parse_switch(key, v);
  } else if (key == "grid_points") {
    config.grid_points = parse_int(key, v);
  } else {
    throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
  }
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trimmed(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ConfigError,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
  }
  return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot read config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), std::move(base));
}

}  // namespace ncspectra
