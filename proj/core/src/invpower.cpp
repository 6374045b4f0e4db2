#include "ncspectra/invpower.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "ncspectra/error.hpp"
#include "ncspectra/polynomial.hpp"

namespace ncspectra::invpower {

std::string_view to_string(Branch branch) noexcept {
  return branch == Branch::Plus ? "plus" : "minus";
}

double InvPowerAnsatz::sigma_sum() const noexcept {
  double s = 0.0;
  for (double v : sigma) s += v;
  return s;
}

double InvPowerAnsatz::origin_exponent() const noexcept {
  double e = C;
  for (double v : sigma) {
    if (std::abs(v) <= 1e-12) e += 1.0;
  }
  return e;
}

namespace {

struct Term {
  double value = 0.0;
  double scale = 0.0;

  void add(double v) {
    value += v;
    scale += std::abs(v);
  }
};

struct Unknowns {
  double A = 0.0, B = 0.0, C = 0.0, b = 0.0;
  std::vector<double> sigma;
};

struct Coefficients {
  double a, b, ct, dt, lambda;
};

Coefficients coefficients_at(const DeformedRadialProblem& p, double b) {
  const DeformedRadialProblem q = with_b(p, b);
  return {q.coefficient(-1), b, q.coefficient(-3), q.coefficient(-4), b + q.centrifugal};
}

// Elementary symmetric sums e_1..e_3 of the sigma values.
std::array<double, 4> elementary(const std::vector<double>& s) {
  std::array<double, 4> e{1.0, 0.0, 0.0, 0.0};
  for (double v : s) {
    e[3] += v * e[2];
    e[2] += v * e[1];
    e[1] += v;
  }
  return e;
}

std::vector<Term> evaluate(const ConstraintSet& cs, const Unknowns& u) {
  const int k = cs.degree;
  const auto co = coefficients_at(cs.problem, u.b);
  const double A = u.A, B = u.B, C = u.C;
  std::vector<Term> out;

  if (!cs.commutative) {
    Term t1;
    t1.add(A * A);
    t1.add(-co.dt);
    out.push_back(t1);
    Term t2;
    t2.add(2.0 * A);
    t2.add(-2.0 * A * C);
    t2.add(-co.ct);
    out.push_back(t2);
  }
  Term t3;
  t3.add(2.0 * B * C);
  t3.add(2.0 * B * k);
  t3.add(-co.a);
  out.push_back(t3);

  if (cs.mode == SignMode::Normalizable) {
    const std::vector<double> h = poly::from_roots(u.sigma);
    auto hc = [&](int j) { return (j < 0 || j > k) ? 0.0 : h[j]; };
    for (int s = 2; s <= k + 2; ++s) {
      Term row;
      const int jp = s - 3, jq = s - 2, js = s - 1;
      if (hc(jp) != 0.0) {
        row.add(2.0 * B * (jp + C) * hc(jp));
        row.add(-co.a * hc(jp));
      }
      if (hc(jq) != 0.0) {
        const double x = jq + C;
        row.add(x * (x - 1.0) * hc(jq));
        row.add(-2.0 * A * B * hc(jq));
        row.add(-co.lambda * hc(jq));
      }
      if (hc(js) != 0.0) {
        row.add(2.0 * A * (1.0 - C - js) * hc(js));
        row.add(-co.ct * hc(js));
      }
      out.push_back(row);
    }
    return out;
  }

  // Published form: lambda identity plus the moment equations in sigma.
  const auto e = elementary(u.sigma);
  double sum_sq = 0.0;
  for (double v : u.sigma) sum_sq += v * v;
  const double root_d = std::sqrt(std::abs(co.dt));

  Term lam;
  lam.add(co.lambda);
  lam.add(-C * (C + 2.0 * k - 1.0));
  lam.add(-static_cast<double>(k * (k - 1)));
  lam.add(2.0 * B * (A - e[1]));
  out.push_back(lam);

  Term m1;
  m1.add(k * root_d);
  m1.add((k + 1.0 + C) * e[1]);
  m1.add(B * sum_sq);
  out.push_back(m1);
  if (k >= 2) {
    // sum over pairs of (sigma_l + sigma_k) is (k-1) e_1
    Term m2;
    m2.add((k - 1.0) * root_d * e[1]);
    m2.add(2.0 * (k - 1.0 + C) * e[2]);
    m2.add(B * e[2] * (k - 1.0) * e[1]);
    out.push_back(m2);
  }
  if (k >= 3) {
    const double triples = (k - 1.0) * (k - 2.0) / 2.0;
    Term m3;
    m3.add((k - 2.0) * root_d * e[2]);
    m3.add(3.0 * (k - 2.0 + C) * e[3]);
    m3.add(B * e[3] * triples * e[1]);
    out.push_back(m3);
  }
  return out;
}

Unknowns unpack(const ConstraintSet& cs, const Eigen::VectorXd& x) {
  Unknowns u;
  int i = 0;
  if (!cs.commutative) u.A = x(i++);
  u.B = x(i++);
  u.C = x(i++);
  for (int j = 0; j < cs.degree; ++j) u.sigma.push_back(x(i++));
  u.b = cs.commutative ? cs.problem.coefficient(-2) : x(i++);
  return u;
}

Eigen::VectorXd pack(const ConstraintSet& cs, const Seed& s) {
  Eigen::VectorXd x(cs.unknowns());
  int i = 0;
  if (!cs.commutative) x(i++) = s.A;
  x(i++) = s.B;
  x(i++) = s.C;
  for (int j = 0; j < cs.degree; ++j) x(i++) = s.sigma[j];
  if (!cs.commutative) x(i++) = s.b;
  return x;
}

Eigen::VectorXd values(const ConstraintSet& cs, const Eigen::VectorXd& x) {
  const auto terms = evaluate(cs, unpack(cs, x));
  Eigen::VectorXd f(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) f(i) = terms[i].value;
  return f;
}

double max_relative(const std::vector<Term>& terms) {
  double worst = 0.0;
  for (const auto& t : terms) {
    if (t.scale > 0.0) worst = std::max(worst, std::abs(t.value) / t.scale);
  }
  return worst;
}

constexpr double kAcceptResidual = 1e-10;

std::optional<Eigen::VectorXd> newton(const ConstraintSet& cs, Eigen::VectorXd x) {
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd f = values(cs, x);
  for (int iter = 0; iter < 200; ++iter) {
    if (!f.allFinite()) return std::nullopt;
    if (max_relative(evaluate(cs, unpack(cs, x))) <= 1e-15) break;
    Eigen::MatrixXd J(f.size(), n);
    for (int j = 0; j < n; ++j) {
      const double step = 1e-6 * std::max(1.0, std::abs(x(j)));
      Eigen::VectorXd xp = x, xm = x;
      xp(j) += step;
      xm(j) -= step;
      J.col(j) = (values(cs, xp) - values(cs, xm)) / (2.0 * step);
    }
    const Eigen::VectorXd dx = J.completeOrthogonalDecomposition().solve(-f);
    if (!dx.allFinite()) return std::nullopt;
    const double f0 = f.norm();
    double t = 1.0;
    Eigen::VectorXd x_new, f_new;
    while (true) {
      x_new = x + t * dx;
      f_new = values(cs, x_new);
      if (f_new.allFinite() && f_new.norm() <= (1.0 - 1e-4 * t) * f0) break;
      t *= 0.5;
      if (t < 1e-8) break;
    }
    if (t < 1e-8) break;
    const bool tiny = (t * dx).norm() <= 1e-16 * (1.0 + x.norm());
    x = x_new;
    f = f_new;
    if (tiny) break;
  }
  if (max_relative(evaluate(cs, unpack(cs, x))) > kAcceptResidual) return std::nullopt;
  return x;
}

bool same(const InvPowerAnsatz& p, const InvPowerAnsatz& q) {
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-8 * (1.0 + std::abs(x)); };
  if (!close(p.A, q.A) || !close(p.B, q.B) || !close(p.C, q.C) || !close(p.b, q.b)) return false;
  for (std::size_t i = 0; i < p.sigma.size(); ++i) {
    if (!close(p.sigma[i], q.sigma[i])) return false;
  }
  return true;
}

bool accept_normalizable(const ConstraintSet& cs, const InvPowerAnsatz& an) {
  if (!(an.B < 0.0)) return false;
  if (cs.commutative) return an.origin_exponent() >= 0.5 - 1e-9;
  return an.A < 0.0;
}

void combinations(const std::vector<double>& pool, int k, std::size_t start,
                  std::vector<double>& current, std::vector<std::vector<double>>& out) {
  if (static_cast<int>(current.size()) == k) {
    out.push_back(current);
    return;
  }
  for (std::size_t i = start; i < pool.size(); ++i) {
    current.push_back(pool[i]);
    combinations(pool, k, i + 1, current, out);
    current.pop_back();
  }
}

// Zeros of the generalized Laguerre polynomial L_k^(alpha) (alpha > -1) as the
// eigenvalues of its Jacobi matrix.
std::vector<double> laguerre_zeros(int k, double alpha) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    J(i, i) = 2.0 * i + alpha + 1.0;
    if (i + 1 < k) J(i, i + 1) = J(i + 1, i) = std::sqrt((i + 1.0) * (i + 1.0 + alpha));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + k};
}

}  // namespace

ConstraintSet assemble_constraints(const DeformedRadialProblem& problem, int degree,
                                   SignMode mode) {
  if (problem.family != Family::InversePower) {
    throw Error(ErrorCode::InvalidFamily, "inverse-power solver given an even-power problem");
  }
  if (degree < 1 || degree > kMaxDegree) {
    std::ostringstream os;
    os << "degree " << degree << " unsupported (allowed: 1.." << kMaxDegree << ")";
    throw Error(ErrorCode::UnsupportedDegree, os.str());
  }
  ConstraintSet cs;
  cs.problem = problem;
  cs.degree = degree;
  cs.mode = mode;
  cs.commutative = problem.theta * problem.m == 0.0;
  if (!cs.commutative) {
    cs.equations.push_back("A^2 = d~");
    cs.equations.push_back("2A(1-C) = c~");
  }
  cs.equations.push_back("a = 2B(C+k)");
  if (mode == SignMode::Normalizable) {
    for (int s = 2; s <= degree + 2; ++s) {
      std::ostringstream os;
      os << "P_" << s - 3 << " h_" << s - 3 << " + Q_" << s - 2 << " h_" << s - 2 << " + S_"
         << s - 1 << " h_" << s - 1 << " = 0";
      cs.equations.push_back(os.str());
    }
  } else {
    cs.equations.push_back("lambda = C(C+2k-1) + k(k-1) - 2B(A - e1)");
    cs.equations.push_back("k sqrt(d~) + (k+1+C) e1 + B sum sigma^2 = 0");
    if (degree >= 2) cs.equations.push_back("(k-1) sqrt(d~) e1 + 2(k-1+C) e2 + B e2 (k-1) e1 = 0");
    if (degree >= 3) cs.equations.push_back("(k-2) sqrt(d~) e2 + 3(k-2+C) e3 + B e3 e1 = 0");
  }
  return cs;
}

std::vector<double> constraint_residuals(const ConstraintSet& constraints,
                                         const InvPowerAnsatz& ansatz) {
  Unknowns u{ansatz.A, ansatz.B, ansatz.C, ansatz.b, ansatz.sigma};
  if (constraints.commutative) u.b = constraints.problem.coefficient(-2);
  std::vector<double> out;
  for (const auto& t : evaluate(constraints, u)) {
    out.push_back(t.scale > 0.0 ? t.value / t.scale : 0.0);
  }
  return out;
}

std::vector<Seed> seed_lattice(const ConstraintSet& cs) {
  const auto& p = cs.problem;
  const int k = cs.degree;
  const double a = p.coefficient(-1);
  const double b = p.coefficient(-2);
  const double unit = a != 0.0 ? 1.0 / std::abs(a) : 1.0;
  auto sigma_pool = [k](double scale) {
    std::vector<double> pool;
    for (double f : {0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0, 4.0, -4.0}) pool.push_back(f * scale);
    std::vector<std::vector<double>> sigmas;
    std::vector<double> current;
    combinations(pool, k, 0, current, sigmas);
    return sigmas;
  };
  const auto base_sigmas = sigma_pool(unit);

  std::vector<Seed> seeds;
  auto push = [&](double A, double C, double b_seed) {
    if (!std::isfinite(C) || C + k == 0.0) return;
    const double B = a / (2.0 * (C + k));
    for (const auto& s : base_sigmas) seeds.push_back(Seed{A, B, C, s, b_seed});
    if (B == 0.0) return;
    // Roots sit on the scale of the exponential decay length, which for
    // shallow levels is far from 1/|a|. The commutative polynomial is
    // L_k^(2C-1)(2|B| r), so its zeros make the leading seed.
    if (2.0 * C - 1.0 > -1.0) {
      auto z = laguerre_zeros(k, 2.0 * C - 1.0);
      for (double& x : z) x /= 2.0 * std::abs(B);
      seeds.push_back(Seed{A, B, C, z, b_seed});
    }
    for (const auto& s : sigma_pool(1.0 / std::abs(B))) seeds.push_back(Seed{A, B, C, s, b_seed});
  };
  if (cs.commutative) {
    const double lambda = b + p.centrifugal;
    if (lambda + 0.25 >= 0.0) {
      const double r = std::sqrt(lambda + 0.25);
      push(0.0, 0.5 + r, b);
      push(0.0, 0.5 - r, b);
      // j roots at the origin lower C by j; the remaining k - j roots are
      // Laguerre zeros. The combination pool never repeats zero, so these
      // exact solutions are seeded directly.
      const double origin = 0.5 + r;
      for (int j = 1; j <= k; ++j) {
        const double C = origin - j;
        const double B = a / (2.0 * (C + k));
        if (!std::isfinite(B) || B == 0.0) continue;
        std::vector<double> sigma(j, 0.0);
        if (j < k) {
          for (double z : laguerre_zeros(k - j, 2.0 * origin - 1.0)) sigma.push_back(z / (2.0 * std::abs(B)));
        }
        seeds.push_back(Seed{0.0, B, C, sigma, b});
      }
    }
    push(0.0, 1.0, b);
    return seeds;
  }
  // b is an unknown here and d~ scales with it, so the seeds sweep b over a
  // log lattice: A^2 = d~(b), C from the r^-3 row, B from the r^-1 row.
  const double ct = p.coefficient(-3);
  const double d_per_b = p.theta * p.m / 4.0;  // d~ = b theta m / 4
  std::vector<double> b_seeds{b};
  if (d_per_b != 0.0) {
    for (int e = -12; e <= 8; ++e) {
      const double trial = std::copysign(std::pow(2.0, e), d_per_b);
      if (trial != b) b_seeds.push_back(trial);
    }
  }
  for (double b_seed : b_seeds) {
    const double d = b_seed == b ? p.coefficient(-4) : d_per_b * b_seed;
    const double root_d = std::sqrt(std::abs(d));
    for (double A : {-root_d, root_d}) {
      if (A == 0.0) continue;
      push(A, 1.0 - ct / (2.0 * A), b_seed);
    }
  }
  return seeds;
}

std::vector<SolvedAnsatz> solve_sigma_system(const ConstraintSet& constraints,
                                             std::optional<std::vector<Seed>> seeds) {
  const std::vector<Seed> lattice = seeds ? *seeds : seed_lattice(constraints);
  std::vector<SolvedAnsatz> found;
  for (const Seed& seed : lattice) {
    if (static_cast<int>(seed.sigma.size()) != constraints.degree) continue;
    const auto x = newton(constraints, pack(constraints, seed));
    if (!x) continue;
    Unknowns u = unpack(constraints, *x);
    // Near a multiple root at the origin Newton stalls on a nearly singular
    // Jacobian; roots that can sit exactly at zero are put there.
    if (u.B != 0.0) {
      Unknowns snapped = u;
      bool moved = false;
      for (double& v : snapped.sigma) {
        if (v != 0.0 && std::abs(v) <= 1e-4 / std::abs(u.B)) {
          v = 0.0;
          moved = true;
        }
      }
      if (moved && max_relative(evaluate(constraints, snapped)) <= kAcceptResidual) u = snapped;
    }
    InvPowerAnsatz an;
    an.A = u.A;
    an.B = u.B;
    an.C = u.C;
    an.b = u.b;
    an.degree = constraints.degree;
    an.sigma = u.sigma;
    std::sort(an.sigma.begin(), an.sigma.end());
    an.h = poly::from_roots(an.sigma);
    an.nu = an.C - 1.0;
    an.lambda_param = u.b + constraints.problem.centrifugal;
    SolvedAnsatz s;
    s.ansatz = an;
    s.residual = max_relative(evaluate(constraints, u));
    s.normalizable = accept_normalizable(constraints, an);
    // Duplicates keep the better-converged representative.
    const auto dup = std::find_if(found.begin(), found.end(),
                                  [&](const SolvedAnsatz& f) { return same(f.ansatz, an); });
    if (dup == found.end()) {
      found.push_back(std::move(s));
    } else if (s.residual < dup->residual) {
      *dup = std::move(s);
    }
  }
  if (found.empty()) {
    std::ostringstream os;
    os << "no seed out of " << lattice.size() << " converged for degree " << constraints.degree;
    throw Error(ErrorCode::NoRealSolution, os.str());
  }
  std::sort(found.begin(), found.end(), [](const SolvedAnsatz& x, const SolvedAnsatz& y) {
    const double ex = -x.ansatz.B * x.ansatz.B, ey = -y.ansatz.B * y.ansatz.B;
    if (ex != ey) return ex < ey;
    if (x.ansatz.C != y.ansatz.C) return x.ansatz.C < y.ansatz.C;
    return x.ansatz.A < y.ansatz.A;
  });
  return found;
}

OmegaReport omega(const DeformedRadialProblem& problem, int degree, double lambda_param,
                  double nu) {
  const double k = degree;
  OmegaReport rep;
  rep.omega = lambda_param + k * (2.0 * k + nu) - k * (k - 1.0);
  const double tm = problem.theta * problem.m;
  const double big = lambda_param + k * (k + 1.0);
  if (tm == 0.0) {
    rep.expanded_sq = big * big;
  } else {
    if (nu == 0.0) {
      throw Error(ErrorCode::DivisionByZeroNu, "expanded omega^2 divides by nu = 0 at theta*m != 0");
    }
    const double a = problem.coefficient(-1);
    const double b = problem.coefficient(-2);
    if (b != 0.0) {
      rep.expanded_sq = tm * a * a / (4.0 * b) * (k * k + 2.0 * k / nu * big) + big * big;
    }
  }
  if (rep.expanded_sq) rep.discrepancy = std::abs(rep.omega * rep.omega - *rep.expanded_sq);
  return rep;
}

namespace {

BRoots b_roots(double A, double sigma_sum, double om, double a, double nu, int degree,
               double numerator_sign) {
  const double lead = A - sigma_sum;
  const double tail = a * (nu + 2.0 * degree);
  BRoots out;
  if (lead == 0.0) {
    out.degenerate = true;
    out.discriminant = om * om;
    out.plus = out.minus = tail / (2.0 * om);
    return out;
  }
  double disc = om * om + 4.0 * lead * tail;
  const double scale = om * om + std::abs(4.0 * lead * tail);
  if (disc < 0.0) {
    if (disc < -1e-12 * scale) {
      std::ostringstream os;
      os << "quadratic for B has complex roots (discriminant " << disc << ")";
      throw Error(ErrorCode::ComplexRoots, os.str());
    }
    disc = 0.0;
  }
  out.discriminant = disc;
  // plus/minus = (w +- sqrt(disc)) / (4 lead), w = numerator_sign * omega. The
  // root without cancellation is taken directly, the other from the product
  // -tail / (4 lead).
  const double root = std::sqrt(disc);
  const double w = numerator_sign * om;
  const double big = w >= 0.0 ? w + root : w - root;
  if (big == 0.0) {
    out.plus = out.minus = 0.0;
    return out;
  }
  const double far = big / (4.0 * lead);
  const double near = -tail / big;
  out.plus = w >= 0.0 ? far : near;
  out.minus = w >= 0.0 ? near : far;
  return out;
}

}  // namespace

BRoots solve_B(double A, double sigma_sum, double om, double a, double nu, int degree) {
  return b_roots(A, sigma_sum, om, a, nu, degree, -1.0);
}

BRoots printed_B_roots(double A, double sigma_sum, double om, double a, double nu, int degree) {
  return b_roots(A, sigma_sum, om, a, nu, degree, 1.0);
}

std::vector<InvPowerSolution> spectrum(const DeformedRadialProblem& problem, int degree,
                                       SignMode mode) {
  const ConstraintSet cs = assemble_constraints(problem, degree, mode);
  const auto solved = solve_sigma_system(cs);
  const double b_in = problem.coefficient(-2);
  const double a = problem.coefficient(-1);

  std::vector<InvPowerSolution> out;
  for (const auto& s : solved) {
    InvPowerSolution sol;
    sol.ansatz = s.ansatz;
    auto& an = sol.ansatz;
    const DeformedRadialProblem at_b = with_b(problem, an.b);
    try {
      sol.omega = omega(at_b, degree, an.lambda_param, an.nu);
    } catch (const Error&) {
      sol.omega.omega = an.lambda_param + degree * (2.0 * degree + an.nu) - degree * (degree - 1.0);
    }
    an.omega = sol.omega.omega;
    sol.energy_reduced = -an.B * an.B;
    sol.energy_physical = at_b.physical_energy(sol.energy_reduced);
    sol.normalizable = s.normalizable;
    sol.b_consistent = std::abs(an.b - b_in) <= 1e-8 * (1.0 + std::abs(b_in));
    sol.nodes = static_cast<int>(
        std::count_if(an.sigma.begin(), an.sigma.end(), [](double v) { return v > 1e-12; }));
    sol.residuals = constraint_residuals(cs, an);
    sol.constraint_residual = s.residual;

    const double S = an.sigma_sum();
    try {
      sol.b_roots = mode == SignMode::Normalizable
                        ? solve_B(an.A, S, an.omega, a, an.nu, degree)
                        : printed_B_roots(an.A, S, an.omega, a, an.nu, degree);
      const auto& r = sol.b_roots;
      sol.branch = std::abs(r.plus - an.B) <= std::abs(r.minus - an.B) ? Branch::Plus
                                                                      : Branch::Minus;
      const double chosen = sol.branch == Branch::Plus ? r.plus : r.minus;
      sol.closed_form_energy = -chosen * chosen;
      if (!r.degenerate) {
        const double lead = an.A - S;
        const double sum_ref = -an.omega / (2.0 * lead);
        const double prod_ref = -a * (an.nu + 2.0 * degree) / (4.0 * lead);
        sol.vieta_sum_residual =
            std::abs(r.plus + r.minus - sum_ref) / std::max(1.0, std::abs(sum_ref));
        sol.vieta_product_residual =
            std::abs(r.plus * r.minus - prod_ref) / std::max(1.0, std::abs(prod_ref));
      }
    } catch (const Error&) {
      sol.closed_form_energy = std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(std::move(sol));
  }
  std::stable_sort(out.begin(), out.end(), [](const InvPowerSolution& x, const InvPowerSolution& y) {
    return x.energy_reduced < y.energy_reduced;
  });
  return out;
}

double first_moment_row(const DeformedRadialProblem& problem, const InvPowerAnsatz& ansatz,
                        SignMode mode) {
  const double k = ansatz.degree;
  double s1 = 0.0, s2 = 0.0;
  for (double v : ansatz.sigma) {
    s1 += v;
    s2 += v * v;
  }
  Term t;
  if (mode == SignMode::Normalizable) {
    t.add(-k * ansatz.A);
    t.add((ansatz.C + k - 1.0) * s1);
  } else {
    const double d = with_b(problem, ansatz.b).coefficient(-4);
    t.add(k * std::sqrt(std::abs(d)));
    t.add((k + 1.0 + ansatz.C) * s1);
  }
  t.add(ansatz.B * s2);
  return t.scale > 0.0 ? t.value / t.scale : 0.0;
}

double radial_function(const InvPowerAnsatz& ansatz, double r) {
  const double h = poly::evaluate(ansatz.h, r);
  return h * std::exp(ansatz.A / r + ansatz.B * r + ansatz.C * std::log(r));
}

}  // namespace ncspectra::invpower
