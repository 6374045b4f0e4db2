#pragma once

// Series solution of the deformed even-power radial problem
//
//   R(r) = exp(alpha r^2/2 + beta r^-2/2) * sum_k a_k r^(2k + nu)
//
// Substituting into R'' + [E~ - a r^2 - b r^-2 - c~ r^-4 - d~ r^-6 - (m^2-1/4) r^-2] R = 0
// gives alpha^2 = a, beta^2 = d~ and the three-term recurrence
//
//   A_j a_j + B_{j+1} a_{j+1} + C_{j+2} a_{j+2} = 0,   j = -2, -1, 0, ...
//
// Truncation at degree n fixes E~ through A_n = 0, nu through C_0 = 0, and
// leaves one algebraic condition (a vanishing (n+1)x(n+1) continuant) that
// pins b for given a, c, theta, m.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ncspectra/deformation.hpp"
#include "ncspectra/sign_mode.hpp"

namespace ncspectra::evenpower {

// Literal: alpha = -sqrt(a), beta = +sqrt(|d~|), nu = 3/2 + c~/(2 beta) and
// the middle recurrence coefficient carrying the shifted index. Normalizable:
// rederived recurrence with both exponentials decaying (alpha < 0, beta < 0).
using ncspectra::SignMode;

struct PrefactorExponents {
  double alpha = 0.0;  // coefficient of r^2/2 in the exponent
  double beta = 0.0;   // coefficient of r^-2/2 in the exponent
  SignMode mode = SignMode::Normalizable;
  bool shifted_index = false;  // middle coefficient evaluated one index early
};

/// Throws SingularAttraction in Normalizable mode when d~ < 0 (no real beta).
PrefactorExponents prefactor_exponents(const DeformedRadialProblem& problem, SignMode mode);

struct RecurrenceCoeffs {
  double A = 0.0;  // multiplies a_n in the row where it is the lowest term
  double B = 0.0;  // multiplies a_n in the row where it is the middle term
  double C = 0.0;  // multiplies a_n in the row where it is the highest term
  // Sums of the magnitudes of the parts of A, B, C; residuals are measured
  // against these so that cancellation to zero reads as zero.
  double A_scale = 0.0;
  double B_scale = 0.0;
  double C_scale = 0.0;
};

RecurrenceCoeffs recurrence_coeffs(const DeformedRadialProblem& problem,
                                   const PrefactorExponents& pre, double nu,
                                   double reduced_energy, int n);

/// Throws DegenerateDeformation when d~ = 0.
double indicial_exponent(const DeformedRadialProblem& problem, const PrefactorExponents& pre);

/// gamma~ = c~ / (2 sqrt|d~|), the combination appearing in the energy.
double gamma_tilde(const DeformedRadialProblem& problem);

/// Reduced energy of the degree-n truncation, without checking that the
/// truncation exists. Literal: sqrt(a)(4 + 2 gamma~ + 4n); Normalizable:
/// -alpha (1 + 2 nu + 4n). The two agree whenever d~ > 0.
double reduced_energy_formula(const DeformedRadialProblem& problem,
                              const PrefactorExponents& pre, int n);

struct ConstraintReport {
  int n = 0;
  SignMode mode = SignMode::Normalizable;
  std::vector<std::string> conditions;
  double indicial_residual = 0.0;     // C_0 at the returned nu
  double termination_residual = 0.0;  // A_n at the returned energy
  double chain_residual = 0.0;        // |continuant| / |continuant|_abs
  bool satisfied = false;
  bool s_level_excluded = false;      // m = 0: C_0 = -c != 0 forces a_0 = 0
  std::vector<double> b_roots;        // all b solving the chain, ascending
  std::optional<double> nearest_b;    // root closest to the problem's b
};

/// Signed, scale-free chain condition f_n(b)/S_n(b) at the problem's b.
double chain_condition(const DeformedRadialProblem& problem, SignMode mode, int n);

/// Solves the chain for b with a, c, theta, m fixed. The search covers
/// |b| <= b_limit on a logarithmic bracket lattice refined by TOMS 748.
std::vector<double> solve_chain_for_b(const DeformedRadialProblem& problem, SignMode mode, int n,
                                      double b_limit = 1e6);

/// Same search with the exponents supplied per trial b (used to solve
/// variant recurrences, e.g. the shifted middle index alone).
std::vector<double> solve_chain_for_b(
    const DeformedRadialProblem& problem,
    const std::function<PrefactorExponents(const DeformedRadialProblem&)>& exponents, int n,
    double b_limit = 1e6);

/// Full set of truncation conditions for degree n. m = 0 is reported as an
/// excluded s-level; d~ = 0 with m != 0 throws DegenerateDeformation.
ConstraintReport solvability_constraint(const DeformedRadialProblem& problem, SignMode mode,
                                        int n, double tolerance = 1e-9);

struct SeriesSolution {
  PrefactorExponents pre;
  double nu = 0.0;
  double gamma = 0.0;
  std::vector<double> coeffs;  // a_0..a_n, unit L2 norm of R on (0, inf) when normalizable
  int n = 0;
  int m = 0;
  double b = 0.0;
  double energy_reduced = 0.0;
  double energy_physical = 0.0;
  int nodes = 0;  // positive roots of sum_k a_k x^k, x = r^2
  bool normalizable = false;

  // Diagnostics.
  double chain_residual = 0.0;
  double indicial_residual = 0.0;
  double closure_residual = 0.0;  // worst recurrence row, relative to its terms
  double norm_before_scaling = 0.0;

  // n = 1 display quantities: lambda~ = c/sqrt|d~|, delta = b/sqrt(a), and the
  // split form sqrt(a)(8 + lambda~) + (a/4)(2 + delta) theta m.
  double display_lambda = 0.0;
  double display_delta = 0.0;
  double display_reduced = 0.0;
  double display_shift = 0.0;
};

struct ClosedFormOptions {
  double tolerance = 1e-9;
  bool enforce_constraint = true;
};

/// Throws ConstraintViolated if the chain residual exceeds the tolerance (when
/// enforced), DegenerateDeformation if d~ = 0.
SeriesSolution closed_form_energy(const DeformedRadialProblem& problem, SignMode mode, int n,
                                  ClosedFormOptions options = {});

/// Degree-n series for explicitly chosen exponents, indicial exponent and
/// energy, with no truncation check: null vector of the truncated system,
/// normalization when both exponentials decay, and the diagnostics. Used to
/// build mixed-convention candidates for comparison.
SeriesSolution series_with(const DeformedRadialProblem& problem, const PrefactorExponents& pre,
                           double nu, double reduced_energy, int n);

/// Angular-stripped wavefunction factor (sum a_k r^2k) r^(nu-1/2) exp(p(r)).
double eigenfunction(const SeriesSolution& solution, const PrefactorExponents& pre, double r);

/// R(r) = sqrt(r) * eigenfunction, the function solving the radial ODE.
double radial_function(const SeriesSolution& solution, double r);

/// Signed recurrence row value for j = -2 .. n, normalized by its terms.
double recurrence_row_residual(const DeformedRadialProblem& problem,
                               const SeriesSolution& solution, int j);

}  // namespace ncspectra::evenpower
