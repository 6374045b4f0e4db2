#pragma once

// Helpers shared by the pipeline and the verify report.

#include <cmath>
#include <functional>
#include <optional>

#include "ncspectra/deformation.hpp"
#include "ncspectra/oracle.hpp"

namespace ncspectra::detail {

struct OracleLevel {
  double energy = 0.0;
  int nodes = 0;
  bool converged = false;
};

/// Oracle level `index` (0-based) of the problem, or empty when the oracle
/// finds fewer levels. Errors other than NoBoundState propagate.
std::optional<OracleLevel> oracle_level(const DeformedRadialProblem& problem, int index,
                                        int grid_points);

inline double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

/// ODE residual of fn at the physical energy on a grid fitted to that energy.
double residual_of(const DeformedRadialProblem& problem, double energy,
                   const std::function<double(double)>& fn, int grid_points,
                   PotentialSign sign = PotentialSign::Standard);

}  // namespace ncspectra::detail
