#pragma once

// Units throughout the library: hbar = 2*mu = 1, so the kinetic operator is
// the bare negative Laplacian.

#include <functional>
#include <map>
#include <string_view>

namespace ncspectra {

enum class Family { EvenPower, InversePower };

std::string_view to_string(Family family) noexcept;
/// Accepts "even" and "inverse" (the CLI spellings) as well as the enum names.
Family parse_family(std::string_view text);

/// Undeformed central potential.
///   EvenPower:    V(r) = a r^2 + b r^-2 + c r^-4
///   InversePower: V(r) = a r^-1 + b r^-2     (c unused)
struct PotentialSpec {
  Family family = Family::EvenPower;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Noncommutativity parameter and the angular quantum number of the sector.
/// theta may have either sign; the first-order validity of small theta is
/// the caller's business.
struct NCContext {
  double theta = 0.0;
  int m = 0;

  double theta_m() const noexcept { return theta * static_cast<double>(m); }
};

/// Scalar radial problem of one m-sector after the coordinate shift:
///   R'' + [E - energy_shift - sum_p terms[p] r^p - centrifugal / r^2] R = 0
struct DeformedRadialProblem {
  Family family = Family::EvenPower;
  PotentialSpec source;
  std::map<int, double> terms;
  double energy_shift = 0.0;
  double centrifugal = 0.0;  // m^2 - 1/4
  int m = 0;
  double theta = 0.0;

  double coefficient(int power) const noexcept;
  double potential(double r) const noexcept;
  /// potential + centrifugal barrier
  double effective_potential(double r) const noexcept;
  double reduced_energy(double physical) const noexcept { return physical - energy_shift; }
  double physical_energy(double reduced) const noexcept { return reduced + energy_shift; }
  /// Most negative power with a nonzero coefficient, or 0 if none.
  int leading_singular_power() const noexcept;
};

/// Deformed even-power potential; L_z is replaced by its eigenvalue m.
/// Throws NonConfining for a <= 0 and InvalidFamily on a family mismatch.
DeformedRadialProblem deform_even_power(const PotentialSpec& spec, const NCContext& ctx);

/// Deformed inverse-power potential (adds r^-3 and r^-4 terms, no shift).
DeformedRadialProblem deform_inverse_power(const PotentialSpec& spec, const NCContext& ctx);

/// Dispatches on spec.family.
DeformedRadialProblem deform(const PotentialSpec& spec, const NCContext& ctx);

/// Same problem rebuilt with a different b (used by the constraint solvers,
/// where b is the parameter pinned by quasi-exact solvability).
DeformedRadialProblem with_b(const DeformedRadialProblem& problem, double b);

enum class PotentialSign {
  Standard,     // R'' + [E - V - (m^2-1/4)/r^2] R = 0
  PrintedPlus,  // R'' + [E + V - (m^2-1/4)/r^2] R = 0, kept for comparison only
  PrintedCentrifugal,  // R'' + [E - V + (m^2-1/4)/r^2] R = 0, kept for comparison only
};

/// q(r) such that the radial equation reads R'' + q(r) R = 0.
struct RadialOperator {
  const DeformedRadialProblem* problem = nullptr;
  double reduced_energy = 0.0;
  PotentialSign sign = PotentialSign::Standard;

  double operator()(double r) const noexcept;
};

RadialOperator effective_radial_ode(const DeformedRadialProblem& problem, double energy,
                                    PotentialSign sign = PotentialSign::Standard);

}  // namespace ncspectra
