#pragma once

// Factored solutions of the deformed inverse-power radial problem
//
//   R(r) = h(r) exp(A/r + B r + C ln r),   h(r) = prod_j (r - sigma_j)
//
// for R'' + [E - a/r - b/r^2 - c~/r^3 - d~/r^4 - (m^2-1/4)/r^2] R = 0.
// Matching powers of r after multiplying through by r^4 h gives
//
//   E~ = -B^2,  A^2 = d~,  2A(1-C) = c~,  a = 2B(C+k)
//
// and k+1 middle rows (s = 2..k+2) in the monic coefficients h_j of h:
//
//   P_{s-3} h_{s-3} + Q_{s-2} h_{s-2} + S_{s-1} h_{s-1} = 0
//   P_j = 2B(j+C) - a,  Q_j = (j+C)(j+C-1) - 2AB - lambda,  S_j = 2A(1-C-j) - c~
//
// with lambda = b + m^2 - 1/4. The top row is the lambda identity
// lambda = (C+k)(C+k-1) - 2B(A - sum sigma). For theta != 0 the system has
// one equation more than (A, B, C, sigma) can absorb, so b is solved too.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncspectra/deformation.hpp"
#include "ncspectra/sign_mode.hpp"

namespace ncspectra::invpower {

enum class Branch { Plus, Minus };

std::string_view to_string(Branch branch) noexcept;

/// Degrees above 3 are rejected: the published moment equations stop at
/// triple products.
inline constexpr int kMaxDegree = 3;

struct InvPowerAnsatz {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  int degree = 0;
  std::vector<double> sigma;  // roots of h, ascending
  std::vector<double> h;      // monic coefficients h_0..h_k
  double nu = 0.0;            // C - 1
  double omega = 0.0;
  double lambda_param = 0.0;  // b + m^2 - 1/4 at the solved b
  double b = 0.0;             // solved b (equal to the input when theta = 0)

  double sigma_sum() const noexcept;
  /// Leading power of r at the origin: C plus the multiplicity of sigma = 0.
  double origin_exponent() const noexcept;
};

struct ConstraintSet {
  DeformedRadialProblem problem;
  int degree = 1;
  SignMode mode = SignMode::Normalizable;
  bool commutative = false;  // theta*m = 0: A = 0, b fixed
  std::vector<std::string> equations;

  /// Unknowns: (A,) B, C, sigma_1..sigma_k (, b).
  int unknowns() const noexcept { return degree + (commutative ? 2 : 4); }
};

/// Throws UnsupportedDegree for degree outside 1..3 and InvalidFamily for an
/// even-power problem.
ConstraintSet assemble_constraints(const DeformedRadialProblem& problem, int degree,
                                   SignMode mode = SignMode::Normalizable);

/// Signed residual of every equation in the set at the given ansatz, each
/// divided by the sum of the magnitudes of its terms.
std::vector<double> constraint_residuals(const ConstraintSet& constraints,
                                         const InvPowerAnsatz& ansatz);

struct Seed {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  std::vector<double> sigma;
  double b = 0.0;
};

/// Default deterministic seed lattice for the set.
std::vector<Seed> seed_lattice(const ConstraintSet& constraints);

struct SolvedAnsatz {
  InvPowerAnsatz ansatz;
  double residual = 0.0;  // max |relative residual|
  bool normalizable = false;
};

/// Damped Newton from each seed; converged points are deduplicated within
/// 1e-8 and sorted by energy -B^2. Throws NoRealSolution when no seed reaches
/// a relative residual of 1e-10.
std::vector<SolvedAnsatz> solve_sigma_system(const ConstraintSet& constraints,
                                             std::optional<std::vector<Seed>> seeds = {});

struct OmegaReport {
  double omega = 0.0;                   // lambda + k(2k + nu) - k(k-1)
  std::optional<double> expanded_sq;    // closed expansion of omega^2 in theta*m
  double discrepancy = 0.0;             // |omega^2 - expanded_sq|, 0 when absent
};

/// The expanded form needs nu != 0 (DivisionByZeroNu otherwise) and b != 0
/// when theta*m != 0; with b = 0 it is left empty.
OmegaReport omega(const DeformedRadialProblem& problem, int degree, double lambda_param,
                  double nu);

struct BRoots {
  double plus = 0.0;
  double minus = 0.0;
  double discriminant = 0.0;
  bool degenerate = false;  // A - sum sigma = 0: single linear root in both slots
};

/// Roots of 4(A - S) B^2 + 2 omega B - a(nu + 2k) = 0, S = sum sigma.
/// plus = (-omega + sqrt(disc)) / (4(A-S)). Throws ComplexRoots when disc < 0.
BRoots solve_B(double A, double sigma_sum, double omega, double a, double nu, int degree);

/// The same pair evaluated with the numerator sign as printed,
/// (omega +- sqrt(disc)) / (4(A-S)); these are the roots of the quadratic with
/// the linear term negated.
BRoots printed_B_roots(double A, double sigma_sum, double omega, double a, double nu, int degree);

struct InvPowerSolution {
  InvPowerAnsatz ansatz;
  double energy_reduced = 0.0;  // -B^2
  double energy_physical = 0.0;
  Branch branch = Branch::Plus;
  bool normalizable = false;
  bool b_consistent = false;    // solved b equals the input b
  int nodes = 0;                // sigma_j > 0
  double constraint_residual = 0.0;
  std::vector<double> residuals;
  OmegaReport omega;
  BRoots b_roots;
  double vieta_sum_residual = 0.0;
  double vieta_product_residual = 0.0;
  double closed_form_energy = 0.0;  // -B_branch^2 from the quadratic roots
};

/// Full pipeline sorted by energy. At theta*m = 0 this is exactly the
/// commutative pipeline (A = 0, b fixed).
std::vector<InvPowerSolution> spectrum(const DeformedRadialProblem& problem, int degree,
                                       SignMode mode = SignMode::Normalizable);

/// First moment row in sigma form: -kA + (C+k-1) S1 + B S2 (rederived) or
/// k sqrt(d~) + (k+1+C) S1 + B S2 (as printed), S1 = sum sigma, S2 = sum sigma^2.
/// Returned relative to the magnitudes of its terms.
double first_moment_row(const DeformedRadialProblem& problem, const InvPowerAnsatz& ansatz,
                        SignMode mode);

/// R(r) = h(r) exp(A/r + B r + C ln r).
double radial_function(const InvPowerAnsatz& ansatz, double r);

}  // namespace ncspectra::invpower
