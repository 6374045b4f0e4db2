#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/deformation.hpp"
#include "ncspectra/sign_mode.hpp"

namespace ncspectra {

enum class OutputFormat { Json, Csv };

struct RunConfig {
  Family family = Family::EvenPower;
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  std::vector<double> theta{0.0};
  std::vector<int> m{1};
  int n = 0;                  // even-power truncation degree
  std::optional<int> degree;  // inverse-power polynomial degree; default max(1, |m|)
  SignMode mode = SignMode::Normalizable;
  bool oracle = true;
  OutputFormat format = OutputFormat::Csv;
  std::string out;  // empty: standard output
  bool timestamp = true;
  int grid_points = 0;  // 0: the oracle default

  int degree_for(int angular) const noexcept;
  PotentialSpec potential() const noexcept { return {family, a, b, c}; }
  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// Applies one `key = value` setting. Keys: family, a, b, c, theta, m, n,
/// degree, mode, oracle, format, out, timestamp, grid_points. Throws ConfigError
/// (InvalidFamily for an unknown family).
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat `key = value` text, `#` starts a comment. Settings are applied on top
/// of `base`.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

std::vector<double> parse_real_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

std::string_view to_string(OutputFormat format) noexcept;

}  // namespace ncspectra
