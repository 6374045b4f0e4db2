#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ncspectra/config.hpp"
#include "ncspectra/deformation.hpp"
#include "ncspectra/report.hpp"

namespace ncspectra {

/// Closed-form rows for every (theta, m), sorted by (theta, m, level).
Report run_spectrum(const RunConfig& config);

/// run_spectrum plus splitting fits per m. Needs at least three nonzero theta
/// values (ConfigError otherwise).
Report run_sweep(const RunConfig& config);

/// Oracle levels 0..n for every (theta, m) at the input b.
Report run_oracle(const RunConfig& config);

/// Least-squares fits of delta = E(theta) - E_ref against x = theta*m:
/// delta = slope x + quadratic x^2, and log|delta| = exponent log|x| + const.
FitRow fit_splitting(const std::string& family, int m, const std::string& source,
                     const std::vector<double>& x, const std::vector<double>& delta);

/// Lowest-lying reference the inverse closed-form branch approaches as theta
/// goes to zero with b solved: -a^2 / (4 (k+1)^2).
double inverse_branch_limit(double a, int degree);

/// Runs fn(i) for i in [0, count) on a pool of worker threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Oracle grid size for the config (its override, else the environment default).
int grid_points_for(const RunConfig& config);

}  // namespace ncspectra
