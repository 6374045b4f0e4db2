#include "ncspectra/evenpower.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <utility>

#include "ncspectra/error.hpp"
#include "ncspectra/polynomial.hpp"

namespace ncspectra::evenpower {

namespace {

double d_tilde(const DeformedRadialProblem& p) { return p.coefficient(-6); }
double c_tilde(const DeformedRadialProblem& p) { return p.coefficient(-4); }

void require_even(const DeformedRadialProblem& p) {
  if (p.family != Family::EvenPower) {
    throw Error(ErrorCode::InvalidFamily, "even-power solver given an inverse-power problem");
  }
}

void require_deformed(const DeformedRadialProblem& p) {
  if (d_tilde(p) == 0.0) {
    throw Error(ErrorCode::DegenerateDeformation,
                "no r^-6 term (theta*m*c = 0); closed form does not apply, use the oracle");
  }
}

struct Chain {
  double nu = 0.0;
  double energy = 0.0;
  std::vector<RecurrenceCoeffs> rc;  // index 0..n
  double value = 0.0;                // continuant f_n
  double scale = 0.0;                // same recurrence in absolute values
};

// Rows i = 0..n of the truncated system M a = 0 have A_{i-1} on the
// subdiagonal, B_i on the diagonal and C_{i+1} on the superdiagonal. Returns
// det M and the same recurrence run on magnitudes.
std::pair<double, double> continuant(const std::vector<RecurrenceCoeffs>& rc) {
  const int n = static_cast<int>(rc.size()) - 1;
  double f_prev = 1.0, f = rc[0].B;
  double s_prev = 1.0, s = rc[0].B_scale;
  for (int i = 1; i <= n; ++i) {
    const double off = rc[i - 1].A * rc[i].C;
    const double f_next = rc[i].B * f - off * f_prev;
    const double s_next = rc[i].B_scale * s + rc[i - 1].A_scale * rc[i].C_scale * s_prev;
    f_prev = f;
    f = f_next;
    s_prev = s;
    s = s_next;
  }
  return {f, s};
}

Chain build_chain(const DeformedRadialProblem& p, const PrefactorExponents& pre, int n) {
  Chain ch;
  ch.nu = indicial_exponent(p, pre);
  ch.energy = reduced_energy_formula(p, pre, n);
  ch.rc.reserve(n + 1);
  for (int i = 0; i <= n; ++i) ch.rc.push_back(recurrence_coeffs(p, pre, ch.nu, ch.energy, i));

  std::tie(ch.value, ch.scale) = continuant(ch.rc);
  return ch;
}

double scaled(const Chain& ch) {
  if (ch.scale == 0.0) return 0.0;
  return ch.value / ch.scale;
}

double log_envelope(const PrefactorExponents& pre, double nu, double r) {
  return nu * std::log(r) + 0.5 * pre.alpha * r * r + 0.5 * pre.beta / (r * r);
}

}  // namespace

PrefactorExponents prefactor_exponents(const DeformedRadialProblem& problem, SignMode mode) {
  require_even(problem);
  const double a = problem.coefficient(2);
  if (!(a > 0.0)) throw Error(ErrorCode::NonConfining, "a must be positive");
  const double d = d_tilde(problem);
  PrefactorExponents pre;
  pre.mode = mode;
  pre.shifted_index = mode == SignMode::Literal;
  pre.alpha = -std::sqrt(a);
  if (mode == SignMode::Literal) {
    pre.beta = std::sqrt(std::abs(d));
  } else {
    if (d < 0.0) {
      throw Error(ErrorCode::SingularAttraction,
                  "d~ < 0 (theta*m*c < 0): attractive r^-6 core, no normalizable series solution");
    }
    pre.beta = -std::sqrt(d);
  }
  return pre;
}

RecurrenceCoeffs recurrence_coeffs(const DeformedRadialProblem& problem,
                                   const PrefactorExponents& pre, double nu,
                                   double reduced_energy, int n) {
  const double b = problem.coefficient(-2);
  const double ct = c_tilde(problem);
  const double fn = static_cast<double>(n);
  RecurrenceCoeffs out;
  const double a_part = pre.alpha * (1.0 + 2.0 * nu + 4.0 * fn);
  out.A = reduced_energy + a_part;
  out.A_scale = std::abs(reduced_energy) + std::abs(a_part);
  // The published middle coefficient is labelled one index ahead of the
  // power it multiplies; the literal mode keeps that labelling.
  const double s = pre.shifted_index ? nu + 2.0 * (fn - 1.0) : nu + 2.0 * fn;
  const double cross = 2.0 * pre.alpha * pre.beta;
  out.B = s * (s - 1.0) - cross - b - problem.centrifugal;
  out.B_scale = std::abs(s * (s - 1.0)) + std::abs(cross) + std::abs(b) +
                std::abs(problem.centrifugal);
  const double c_part = pre.beta * (3.0 - 2.0 * nu - 4.0 * fn);
  out.C = c_part - ct;
  out.C_scale = std::abs(c_part) + std::abs(ct);
  return out;
}

double indicial_exponent(const DeformedRadialProblem& problem, const PrefactorExponents& pre) {
  require_even(problem);
  require_deformed(problem);
  const double ct = c_tilde(problem);
  if (pre.mode == SignMode::Literal) return 1.5 + ct / (2.0 * pre.beta);
  // C_0 = beta (3 - 2 nu) - c~ = 0
  return 1.5 - ct / (2.0 * pre.beta);
}

double gamma_tilde(const DeformedRadialProblem& problem) {
  require_deformed(problem);
  return c_tilde(problem) / (2.0 * std::sqrt(std::abs(d_tilde(problem))));
}

double reduced_energy_formula(const DeformedRadialProblem& problem,
                              const PrefactorExponents& pre, int n) {
  const double fn = static_cast<double>(n);
  if (pre.mode == SignMode::Literal) {
    const double a = problem.coefficient(2);
    return std::sqrt(a) * (4.0 + 2.0 * gamma_tilde(problem) + 4.0 * fn);
  }
  const double nu = indicial_exponent(problem, pre);
  return -pre.alpha * (1.0 + 2.0 * nu + 4.0 * fn);
}

double chain_condition(const DeformedRadialProblem& problem, SignMode mode, int n) {
  const auto pre = prefactor_exponents(problem, mode);
  return scaled(build_chain(problem, pre, n));
}

std::vector<double> solve_chain_for_b(const DeformedRadialProblem& problem, SignMode mode, int n,
                                      double b_limit) {
  return solve_chain_for_b(
      problem, [mode](const DeformedRadialProblem& q) { return prefactor_exponents(q, mode); }, n,
      b_limit);
}

std::vector<double> solve_chain_for_b(
    const DeformedRadialProblem& problem,
    const std::function<PrefactorExponents(const DeformedRadialProblem&)>& exponents, int n,
    double b_limit) {
  require_even(problem);
  require_deformed(problem);
  auto g = [&](double b) {
    const auto q = with_b(problem, b);
    return scaled(build_chain(q, exponents(q), n));
  };

  std::vector<double> lattice{0.0};
  constexpr int per_decade = 200;
  const double top = std::log10(b_limit);
  for (double t = -4.0; t <= top + 1e-12; t += 1.0 / per_decade) {
    const double v = std::pow(10.0, t);
    lattice.push_back(v);
    lattice.push_back(-v);
  }
  std::sort(lattice.begin(), lattice.end());

  std::vector<double> roots;
  double x0 = lattice.front(), g0 = g(x0);
  for (std::size_t i = 1; i < lattice.size(); ++i) {
    const double x1 = lattice[i], g1 = g(x1);
    if (g0 == 0.0) {
      roots.push_back(x0);
    } else if (std::signbit(g0) != std::signbit(g1) && g1 != 0.0) {
      std::uintmax_t iters = 200;
      auto tol = boost::math::tools::eps_tolerance<double>(52);
      auto [lo, hi] = boost::math::tools::toms748_solve(g, x0, x1, g0, g1, tol, iters);
      roots.push_back(0.5 * (lo + hi));
    }
    x0 = x1;
    g0 = g1;
  }
  if (g0 == 0.0) roots.push_back(x0);
  return roots;
}

ConstraintReport solvability_constraint(const DeformedRadialProblem& problem, SignMode mode,
                                        int n, double tolerance) {
  require_even(problem);
  ConstraintReport rep;
  rep.n = n;
  rep.mode = mode;
  if (problem.m == 0) {
    // Without the r^-6 term the lowest row reads -c a_0 = 0.
    rep.s_level_excluded = true;
    rep.indicial_residual = -c_tilde(problem);
    rep.satisfied = false;
    rep.conditions.push_back("m = 0: lowest recurrence row forces a_0 = 0 (s-level excluded)");
    return rep;
  }
  const auto pre = prefactor_exponents(problem, mode);
  const Chain ch = build_chain(problem, pre, n);

  std::ostringstream os;
  rep.conditions.push_back("C_0(nu) = 0 fixes the indicial exponent");
  os << "A_" << n << " = 0 fixes the energy";
  rep.conditions.push_back(os.str());
  rep.conditions.push_back("det of the (n+1)x(n+1) truncated recurrence = 0 (pins b)");

  rep.indicial_residual = recurrence_coeffs(problem, pre, ch.nu, ch.energy, 0).C;
  rep.termination_residual = ch.rc[n].A;
  rep.chain_residual = std::abs(scaled(ch));
  rep.satisfied = rep.chain_residual <= tolerance;
  rep.b_roots = solve_chain_for_b(problem, mode, n);
  const double b = problem.coefficient(-2);
  for (double root : rep.b_roots) {
    if (!rep.nearest_b || std::abs(root - b) < std::abs(*rep.nearest_b - b)) rep.nearest_b = root;
  }
  return rep;
}

SeriesSolution closed_form_energy(const DeformedRadialProblem& problem, SignMode mode, int n,
                                  ClosedFormOptions options) {
  require_even(problem);
  require_deformed(problem);
  const auto pre = prefactor_exponents(problem, mode);
  const Chain ch = build_chain(problem, pre, n);
  const double chain_res = std::abs(scaled(ch));
  if (options.enforce_constraint && chain_res > options.tolerance) {
    std::ostringstream os;
    os << "truncation at n = " << n << " does not exist for b = " << problem.coefficient(-2)
       << " (chain residual " << chain_res << ")";
    throw Error(ErrorCode::ConstraintViolated, os.str());
  }

  SeriesSolution sol = series_with(problem, pre, ch.nu, ch.energy, n);
  sol.chain_residual = chain_res;

  const double a = problem.coefficient(2);
  const double dt = d_tilde(problem);
  sol.display_lambda = problem.source.c / std::sqrt(std::abs(dt));
  sol.display_delta = problem.source.b / std::sqrt(a);
  sol.display_reduced = std::sqrt(a) * (8.0 + sol.display_lambda);
  sol.display_shift = (a / 4.0) * (2.0 + sol.display_delta) * problem.theta * problem.m;
  return sol;
}

SeriesSolution series_with(const DeformedRadialProblem& problem, const PrefactorExponents& pre,
                           double nu, double reduced_energy, int n) {
  require_even(problem);
  SeriesSolution sol;
  sol.pre = pre;
  sol.n = n;
  sol.m = problem.m;
  sol.b = problem.coefficient(-2);
  sol.nu = nu;
  sol.gamma = gamma_tilde(problem);
  sol.energy_reduced = reduced_energy;
  sol.energy_physical = problem.physical_energy(reduced_energy);
  sol.indicial_residual = recurrence_coeffs(problem, pre, nu, reduced_energy, 0).C;

  std::vector<RecurrenceCoeffs> rc;
  for (int i = 0; i <= n; ++i) rc.push_back(recurrence_coeffs(problem, pre, nu, reduced_energy, i));
  const auto [det, det_scale] = continuant(rc);
  sol.chain_residual = det_scale > 0.0 ? std::abs(det) / det_scale : 0.0;

  // Null vector of the truncated system.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) M(i, i - 1) = rc[i - 1].A;
    M(i, i) = rc[i].B;
    if (i < n) M(i, i + 1) = rc[i + 1].C;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  Eigen::VectorXd v = svd.matrixV().col(n);
  if (v(0) < 0.0 || (v(0) == 0.0 && v(n) < 0.0)) v = -v;
  sol.coeffs.assign(v.data(), v.data() + v.size());

  sol.normalizable = pre.alpha < 0.0 && pre.beta < 0.0;
  if (sol.normalizable) {
    boost::math::quadrature::exp_sinh<double> integrator;
    auto density = [&](double r) {
      const double R = radial_function(sol, r);
      return R * R;
    };
    const double norm2 = integrator.integrate(density, 0.0, std::numeric_limits<double>::infinity(),
                                              1e-12);
    sol.norm_before_scaling = std::sqrt(norm2);
    for (double& c : sol.coeffs) c /= sol.norm_before_scaling;
  }
  sol.nodes = poly::count_positive_real_roots(sol.coeffs);

  sol.closure_residual = 0.0;
  for (int j = -2; j <= n + 2; ++j) {
    sol.closure_residual =
        std::max(sol.closure_residual, std::abs(recurrence_row_residual(problem, sol, j)));
  }

  return sol;
}

double eigenfunction(const SeriesSolution& solution, const PrefactorExponents& pre, double r) {
  const double p = poly::evaluate(solution.coeffs, r * r);
  return p * std::exp(log_envelope(pre, solution.nu - 0.5, r));
}

double radial_function(const SeriesSolution& solution, double r) {
  const double p = poly::evaluate(solution.coeffs, r * r);
  return p * std::exp(log_envelope(solution.pre, solution.nu, r));
}

double recurrence_row_residual(const DeformedRadialProblem& problem,
                               const SeriesSolution& solution, int j) {
  const int n = static_cast<int>(solution.coeffs.size()) - 1;
  auto coeff = [&](int k) { return (k < 0 || k > n) ? 0.0 : solution.coeffs[k]; };
  auto rc = [&](int k) {
    return recurrence_coeffs(problem, solution.pre, solution.nu, solution.energy_reduced, k);
  };
  double value = 0.0, scale = 0.0;
  if (j >= 0) {
    const auto r = rc(j);
    value += r.A * coeff(j);
    scale += r.A_scale * std::abs(coeff(j));
  }
  if (j + 1 >= 0) {
    const auto r = rc(j + 1);
    value += r.B * coeff(j + 1);
    scale += r.B_scale * std::abs(coeff(j + 1));
  }
  const auto r = rc(j + 2);
  value += r.C * coeff(j + 2);
  scale += r.C_scale * std::abs(coeff(j + 2));
  if (scale == 0.0) return 0.0;
  return value / scale;
}

}  // namespace ncspectra::evenpower
