#pragma once

// Numerical reference spectrum for any DeformedRadialProblem.
//
// On the logarithmic grid r = e^x the substitution R = e^(x/2) u turns the
// radial equation into the symmetric pencil
//
//   -u'' + (m^2 + r^2 V(r)) u = E~ r^2 u,
//
// discretized by the cell-centred second difference. Eigenvalues are located
// by Sturm counting and bisection, then extrapolated over N, 2N and 4N cells.

#include <array>
#include <functional>
#include <vector>

#include "ncspectra/deformation.hpp"

namespace ncspectra::oracle {

enum class GridMapping { Uniform, Logarithmic };

struct GridSpec {
  double r_min = 1e-3;
  double r_max = 10.0;
  GridMapping mapping = GridMapping::Logarithmic;
  int points = 4000;
  /// Grow [r_min, r_max] at fixed spacing until the forbidden tails hold
  /// enough decay lengths for the highest requested level.
  bool auto_expand = true;
};

/// NCSPECTRA_GRID_N when set to an integer >= 200, else 4000.
int default_grid_points();

/// Starting grid for a problem: length scale from the leading confining or
/// Coulomb term, inner edge inside the forbidden core for repulsive
/// singularities. Throws SingularAttraction for a potential unbounded below
/// at the origin.
GridSpec default_grid(const DeformedRadialProblem& problem, int points = default_grid_points());

struct OracleResult {
  std::vector<double> eigenvalues;           // physical energies, three-grid extrapolation
  std::vector<double> reduced;               // eigenvalues - energy_shift
  std::vector<int> node_counts;
  std::vector<double> residual_norms;        // relative, finest grid
  std::vector<double> richardson_estimate;   // two-grid extrapolation from N and 2N
  std::vector<std::array<double, 3>> grid_values;  // raw values on N, 2N, 4N
  std::vector<bool> converged;
  GridSpec grid;  // domain after expansion, base resolution

  bool all_converged() const noexcept;
};

struct OracleOptions {
  double decay_lengths = 25.0;
  double tolerance = 1e-8;  // |three-grid - two-grid| <= tolerance |E| + 1e-12
  bool throw_on_unconverged = true;
};

/// Lowest n_eigs levels. Non-confining problems report only E < 0 levels and
/// throw NoBoundState when there are none. Throws InvalidGrid for a malformed
/// grid, SingularAttraction for fall to the centre, NotConverged when a level
/// fails the extrapolation check (if requested).
OracleResult solve_radial(const DeformedRadialProblem& problem, const GridSpec& grid, int n_eigs,
                          const OracleOptions& options = {});

struct ResidualReport {
  double residual = 0.0;
  bool degenerate_function = false;  // sup |R| = 0
};

/// Sup over the grid interior of |R'' + q R| / (|R''| + (|q| + r^-2)|R| + |E~| sup|R|),
/// with q the standard-form radial operator at the physical energy E. The
/// second derivative uses a five-point stencil scaled to the local wavelength.
ResidualReport ode_residual(const DeformedRadialProblem& problem, double energy,
                            const std::function<double(double)>& fn, const GridSpec& grid,
                            PotentialSign sign = PotentialSign::Standard);

/// Grid whose forbidden tails hold the requested number of decay lengths at
/// the given physical energy.
GridSpec grid_for_energy(const DeformedRadialProblem& problem, double energy,
                         int points = default_grid_points(), double decay_lengths = 25.0);

struct LevelMatch {
  int index = 0;
  int node_count = 0;
  double oracle_energy = 0.0;
  double gap = 0.0;      // |target - oracle_energy|
  bool clamped = false;  // target lies outside [front, back]
};

LevelMatch match_level(const OracleResult& oracle, double target);

}  // namespace ncspectra::oracle
