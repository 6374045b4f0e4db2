#pragma once

// Tabular results and their CSV / JSON forms. Missing reals are NaN (empty
// CSV cell, JSON null); a missing node count is -1.

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/deformation.hpp"

namespace ncspectra {

inline constexpr int kSchemaVersion = 1;
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

struct SpectrumRow {
  std::string family;
  double theta = 0.0;
  int m = 0;
  int level = 0;
  std::string mode;
  std::string status;
  double b_input = kMissing;
  double b_solved = kMissing;
  double b_solved_paper = kMissing;
  double b_solved_rederived = kMissing;
  double E_physical = kMissing;
  double E_reduced = kMissing;
  double energy_shift = kMissing;
  double E_physical_paper = kMissing;
  double E_physical_rederived = kMissing;
  double oracle_E = kMissing;
  double gap = kMissing;  // |E_physical - oracle_E| / |oracle_E|
  int nodes = -1;
  double constraint_residual = kMissing;
  double ode_residual = kMissing;
  bool oracle_verified = false;
  double E_fixed_b = kMissing;  // oracle level at the input b with the same node count
  std::string branch;
  bool normalizable = false;
};

struct FitRow {
  std::string family;
  int m = 0;
  std::string source;  // oracle_fixed_b or closed_form
  int points = 0;
  double slope = kMissing;      // dE/d(theta m) at theta m -> 0
  double quadratic = kMissing;  // coefficient of (theta m)^2
  double exponent = kMissing;   // log-log slope of |E(theta) - E_ref|
  double r_squared = kMissing;  // of the log-log fit
  double fit_residual = kMissing;
};

struct VerifyRow {
  std::string family;
  std::string entry;
  std::string description;
  std::string verdict;  // rederived, paper, both, neither, degenerate
  double paper_value = kMissing;
  double rederived_value = kMissing;
  double oracle_value = kMissing;
  double paper_residual = kMissing;
  double rederived_residual = kMissing;
  double paper_gap = kMissing;
  double rederived_gap = kMissing;
  bool rederived_ok = false;
};

struct Report {
  std::string command;
  std::optional<std::string> generated;
  std::vector<SpectrumRow> rows;
  std::vector<FitRow> fits;
  std::vector<VerifyRow> checks;
};

std::string to_csv(const Report& report);
std::string to_json(const Report& report);

/// Inverses of the emitters. Throw ConfigError on malformed input.
Report parse_csv(std::string_view text);
Report parse_json(std::string_view text);

/// Field-wise equality with NaN equal to NaN.
bool equivalent(const Report& x, const Report& y);

/// Deformed problems as emitted by the deform command: one object (JSON) or
/// one row per term (CSV) for each problem.
std::string problems_to_json(const std::vector<DeformedRadialProblem>& problems,
                             const std::optional<std::string>& generated);
std::string problems_to_csv(const std::vector<DeformedRadialProblem>& problems,
                            const std::optional<std::string>& generated);

std::vector<std::string> spectrum_columns();
std::vector<std::string> fit_columns();
std::vector<std::string> verify_columns();

}  // namespace ncspectra
