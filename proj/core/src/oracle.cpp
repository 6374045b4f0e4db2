#include "ncspectra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "ncspectra/error.hpp"

namespace ncspectra::oracle {

bool OracleResult::all_converged() const noexcept {
  return std::all_of(converged.begin(), converged.end(), [](bool c) { return c; });
}

int default_grid_points() {
  if (const char* env = std::getenv("NCSPECTRA_GRID_N")) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(env, &used);
      if (used == std::string(env).size() && n >= 200) return n;
    } catch (const std::exception&) {
    }
  }
  return 4000;
}

namespace {

bool confining(const DeformedRadialProblem& p) { return p.coefficient(2) > 0.0; }

// Leading singular term that is stronger than the centrifugal barrier.
bool repulsive_core(const DeformedRadialProblem& p) { return p.leading_singular_power() < -2; }

void check_attraction(const DeformedRadialProblem& p) {
  const int lead = p.leading_singular_power();
  if (lead < -2 && p.coefficient(lead) < 0.0) {
    std::ostringstream os;
    os << "attractive r^" << lead << " core (coefficient " << p.coefficient(lead)
       << "): spectrum unbounded below (fall to the centre)";
    throw Error(ErrorCode::SingularAttraction, os.str());
  }
  if (lead >= -2 && p.m * p.m + p.coefficient(-2) < 0.0) {
    throw Error(ErrorCode::SingularAttraction,
                "m^2 + b < 0: attractive inverse-square core, fall to the centre");
  }
}

double length_scale(const DeformedRadialProblem& p) {
  if (confining(p)) return std::pow(p.coefficient(2), -0.25);
  const double a = p.coefficient(-1);
  if (a < 0.0) {
    // Coulomb-like levels sit near r ~ (l + 1)^2 / |a| with l the barrier's
    // effective angular index.
    const double l = std::sqrt(std::max(p.centrifugal + p.coefficient(-2) + 0.25, 0.0));
    return (1.0 + l) * (1.0 + l) / std::abs(a);
  }
  return 1.0;
}

// Largest r on a logarithmic scan of [lo, hi] with V_eff(r) <= E, or lo.
double outer_turning_point(const DeformedRadialProblem& p, double E, double lo, double hi) {
  double turn = lo;
  const int per_decade = 200;
  const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    const double r = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
    if (p.effective_potential(r) + p.energy_shift <= E) turn = r;
  }
  return turn;
}

// Smallest r on a logarithmic scan with V_eff(r) <= E, or hi.
double inner_turning_point(const DeformedRadialProblem& p, double E, double lo, double hi) {
  const int per_decade = 200;
  const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    const double r = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
    if (p.effective_potential(r) + p.energy_shift <= E) return r;
  }
  return hi;
}

// Walks from r0 by factor (1 +- 0.005) accumulating the WKB decay integral
// until it reaches `target` or r leaves [r_floor, r_cap].
double decay_edge(const DeformedRadialProblem& p, double E, double r0, double target, bool outward,
                  double r_floor, double r_cap) {
  const double factor = outward ? 1.005 : 1.0 / 1.005;
  double r = r0, acc = 0.0;
  auto kappa = [&](double x) {
    return std::sqrt(std::max(0.0, p.effective_potential(x) + p.energy_shift - E));
  };
  double k0 = kappa(r);
  while (acc < target) {
    const double next = r * factor;
    if (next > r_cap || next < r_floor) return next > r_cap ? r_cap : r_floor;
    const double k1 = kappa(next);
    acc += 0.5 * (k0 + k1) * std::abs(next - r);
    r = next;
    k0 = k1;
  }
  return r;
}

struct Domain {
  double r_min, r_max;
};

// Minimum of V_eff + shift on a logarithmic scan of [lo, hi].
double well_bottom(const DeformedRadialProblem& p, double lo, double hi) {
  const int per_decade = 200;
  const int steps = static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade));
  double bottom = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    const double r = lo * std::pow(10.0, static_cast<double>(i) / per_decade);
    bottom = std::min(bottom, p.effective_potential(r) + p.energy_shift);
  }
  return bottom;
}

Domain domain_for(const DeformedRadialProblem& p, double E, double decay, double r_min_default) {
  const double L = length_scale(p);
  const double cap = 1e6 * L, floor = 1e-12 * L;
  // Below the bottom of the well there is no allowed region to anchor the
  // tails; such energies (trial functions, not levels) get the bottom's domain.
  const double bottom = well_bottom(p, floor, cap);
  if (std::isfinite(bottom) && E <= bottom) E = bottom + 1e-3 * std::max(1.0, std::abs(bottom));
  const double turn = outer_turning_point(p, E, std::min(r_min_default, 1e-3 * L), cap);
  Domain d;
  d.r_max = decay_edge(p, E, std::max(turn, L * 1e-3), decay, true, floor, cap);
  d.r_min = r_min_default;
  if (repulsive_core(p)) {
    const double inner = inner_turning_point(p, E, floor, cap);
    d.r_min = decay_edge(p, E, inner, decay, false, floor, cap);
  }
  return d;
}

struct Discretization {
  std::vector<double> r, D, Q, W;
  double off2 = 0.0;  // square of the off-diagonal entry
  double h = 0.0;
  int n() const { return static_cast<int>(r.size()); }
};

Discretization discretize(const DeformedRadialProblem& p, double r_lo, double r_hi, int N,
                          GridMapping mapping) {
  Discretization d;
  d.r.resize(N);
  d.D.resize(N);
  d.Q.resize(N);
  d.W.resize(N);
  if (mapping == GridMapping::Logarithmic) {
    const double x0 = std::log(r_lo);
    d.h = (std::log(r_hi) - x0) / N;
    const double inv_h2 = 1.0 / (d.h * d.h);
    const double m2 = static_cast<double>(p.m) * p.m;
    for (int i = 0; i < N; ++i) {
      const double r = std::exp(x0 + (i + 0.5) * d.h);
      d.r[i] = r;
      d.Q[i] = m2 + r * r * p.potential(r);
      d.W[i] = r * r;
      d.D[i] = 2.0 * inv_h2;
    }
    if (repulsive_core(p)) {
      d.D[0] = 3.0 * inv_h2;
    } else {
      // u ~ r^kappa at the origin; first correction from the Coulomb term.
      const double k0 = std::sqrt(std::max(0.0, m2 + p.coefficient(-2)));
      const double kappa = k0 + p.coefficient(-1) * r_lo / (2.0 * k0 + 1.0);
      const double rho = (1.0 - 0.5 * kappa * d.h) / (1.0 + 0.5 * kappa * d.h);
      d.D[0] = (2.0 - rho) * inv_h2;
    }
    d.D[N - 1] = 3.0 * inv_h2;
    d.off2 = inv_h2 * inv_h2;
  } else {
    d.h = (r_hi - r_lo) / N;
    const double inv_h2 = 1.0 / (d.h * d.h);
    for (int i = 0; i < N; ++i) {
      const double r = r_lo + (i + 0.5) * d.h;
      d.r[i] = r;
      d.Q[i] = p.effective_potential(r);
      d.W[i] = 1.0;
      d.D[i] = 2.0 * inv_h2;
    }
    d.D[0] = 3.0 * inv_h2;
    d.D[N - 1] = 3.0 * inv_h2;
    d.off2 = inv_h2 * inv_h2;
  }
  return d;
}

// Number of pencil eigenvalues strictly below sigma (Sylvester inertia of
// K + Q - sigma W through its LDL^T pivots).
int count_below(const Discretization& d, double sigma) {
  int count = 0;
  double piv = 1.0;
  for (int i = 0; i < d.n(); ++i) {
    piv = d.D[i] + d.Q[i] - sigma * d.W[i] - (i > 0 ? d.off2 / piv : 0.0);
    if (piv == 0.0) piv = -std::numeric_limits<double>::min();
    if (piv < 0.0) ++count;
  }
  return count;
}

double lower_bound(const Discretization& d) {
  double lo = std::numeric_limits<double>::max();
  for (int i = 0; i < d.n(); ++i) lo = std::min(lo, d.Q[i] / d.W[i]);
  lo -= 1.0;
  for (int i = 0; i < 200 && count_below(d, lo) > 0; ++i) lo -= 2.0 * std::abs(lo) + 1.0;
  return lo;
}

double bisect(const Discretization& d, int index, double lo, double hi) {
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (count_below(d, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Lowest `want` eigenvalues; fewer when the problem is non-confining and the
// box holds fewer negative levels.
std::vector<double> eigenvalues(const Discretization& d, int want, bool only_negative) {
  const double lo = lower_bound(d);
  int available = want;
  double hi;
  if (only_negative) {
    available = std::min(want, count_below(d, 0.0));
    hi = 0.0;
  } else {
    hi = std::max(1.0, std::abs(lo));
    for (int i = 0; i < 200 && count_below(d, hi) < want; ++i) hi += 2.0 * std::abs(hi) + 1.0;
  }
  std::vector<double> out;
  double floor = lo;
  for (int j = 0; j < available; ++j) {
    const double e = bisect(d, j, floor, hi);
    out.push_back(e);
    floor = lo;
  }
  return out;
}

// Inverse iteration for the eigenvector of the pencil at E (Thomas algorithm).
std::vector<double> eigenvector(const Discretization& d, double E) {
  const int n = d.n();
  const double off = -std::sqrt(d.off2);
  std::vector<double> x(n, 1.0), c(n), y(n);
  for (int it = 0; it < 3; ++it) {
    double piv = 0.0;
    for (int i = 0; i < n; ++i) {
      double diag = d.D[i] + d.Q[i] - E * d.W[i];
      double rhs = d.W[i] * x[i];
      if (i > 0) {
        diag -= off * c[i - 1];
        rhs -= off * y[i - 1];
      }
      if (diag == 0.0) diag = std::numeric_limits<double>::epsilon() * (std::abs(d.D[i]) + 1.0);
      piv = diag;
      c[i] = off / piv;
      y[i] = rhs / piv;
    }
    for (int i = n - 2; i >= 0; --i) y[i] -= c[i] * y[i + 1];
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, std::abs(v));
    for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
  }
  return x;
}

int count_nodes(const std::vector<double>& u) {
  double big = 0.0;
  for (double v : u) big = std::max(big, std::abs(v));
  const double tiny = 1e-8 * big;
  int nodes = 0, last = 0;
  for (double v : u) {
    if (std::abs(v) <= tiny) continue;
    const int s = v > 0.0 ? 1 : -1;
    if (last != 0 && s != last) ++nodes;
    last = s;
  }
  return nodes;
}

double pencil_residual(const Discretization& d, const std::vector<double>& u, double E) {
  const double off = -std::sqrt(d.off2);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < d.n(); ++i) {
    double ku = (d.D[i] + d.Q[i]) * u[i];
    double mag = std::abs(d.D[i] * u[i]) + std::abs(d.Q[i] * u[i]);
    if (i > 0) {
      ku += off * u[i - 1];
      mag += std::abs(off * u[i - 1]);
    }
    if (i + 1 < d.n()) {
      ku += off * u[i + 1];
      mag += std::abs(off * u[i + 1]);
    }
    const double wu = E * d.W[i] * u[i];
    num = std::max(num, std::abs(ku - wu));
    den = std::max(den, mag + std::abs(wu));
  }
  return den > 0.0 ? num / den : 0.0;
}

void validate(const DeformedRadialProblem& p, const GridSpec& g) {
  if (!(g.r_min > 0.0) || !(g.r_min < g.r_max) || !std::isfinite(g.r_max) || g.points < 200) {
    std::ostringstream os;
    os << "grid needs 0 < r_min < r_max and points >= 200 (got r_min=" << g.r_min
       << ", r_max=" << g.r_max << ", points=" << g.points << ")";
    throw Error(ErrorCode::InvalidGrid, os.str());
  }
  if (g.mapping == GridMapping::Uniform && p.leading_singular_power() < -2) {
    throw Error(ErrorCode::InvalidGrid,
                "r^-3 and stronger singularities require the logarithmic mapping");
  }
}

}  // namespace

GridSpec default_grid(const DeformedRadialProblem& problem, int points) {
  check_attraction(problem);
  const double L = length_scale(problem);
  GridSpec g;
  g.points = points;
  g.r_max = 10.0 * L;
  g.r_min = 1e-6 * L;
  if (repulsive_core(problem)) {
    // Inner edge where the singular term alone accumulates the decay target
    // at zero energy; refined later against the actual levels.
    const double guess = 1e-12 * L;
    const double inner = inner_turning_point(problem, problem.effective_potential(L), guess, L);
    g.r_min = decay_edge(problem, problem.effective_potential(L), inner, 25.0, false, guess, L);
  }
  return g;
}

GridSpec grid_for_energy(const DeformedRadialProblem& problem, double energy, int points,
                         double decay_lengths) {
  check_attraction(problem);
  const double L = length_scale(problem);
  const Domain dom = domain_for(problem, energy, decay_lengths, 1e-6 * L);
  GridSpec g;
  g.r_min = dom.r_min;
  g.r_max = std::max(dom.r_max, 2.0 * dom.r_min);
  g.points = points;
  return g;
}

OracleResult solve_radial(const DeformedRadialProblem& problem, const GridSpec& grid, int n_eigs,
                          const OracleOptions& options) {
  validate(problem, grid);
  check_attraction(problem);
  const bool only_negative = !confining(problem);
  GridSpec g = grid;

  auto log_width = [](const GridSpec& s) {
    return s.mapping == GridMapping::Logarithmic ? std::log(s.r_max / s.r_min)
                                                 : s.r_max - s.r_min;
  };
  const double spacing = log_width(g) / g.points;

  std::vector<double> coarse;
  for (int round = 0; round < 12; ++round) {
    const auto d = discretize(problem, g.r_min, g.r_max, g.points, g.mapping);
    coarse = eigenvalues(d, n_eigs, only_negative);
    if (!g.auto_expand) break;
    GridSpec next = g;
    if (coarse.empty() || (only_negative && static_cast<int>(coarse.size()) < n_eigs)) {
      // Shallow levels may not fit yet; a larger box can only add them.
      if (!only_negative) break;
      next.r_max = 2.0 * g.r_max;
    }
    if (!coarse.empty()) {
      const double top = coarse.back() + problem.energy_shift;
      const Domain need = domain_for(problem, top, options.decay_lengths, g.r_min);
      next.r_max = std::max(next.r_max, need.r_max);
      if (repulsive_core(problem)) next.r_min = std::min(g.r_min, need.r_min);
    }
    if (next.r_max == g.r_max && next.r_min == g.r_min) break;
    next.points = std::max(g.points, static_cast<int>(std::ceil(log_width(next) / spacing)));
    g = next;
  }
  if (coarse.empty()) {
    throw Error(ErrorCode::NoBoundState, "no negative eigenvalue: no bound state in range");
  }

  const int levels = static_cast<int>(coarse.size());
  std::array<std::vector<double>, 3> raw;
  Discretization finest;
  for (int level = 0; level < 3; ++level) {
    auto d = discretize(problem, g.r_min, g.r_max, g.points << level, g.mapping);
    raw[level] = eigenvalues(d, levels, only_negative);
    if (level == 2) finest = std::move(d);
  }

  OracleResult res;
  res.grid = g;
  std::ostringstream failures;
  for (int j = 0; j < levels; ++j) {
    if (j >= static_cast<int>(raw[0].size()) || j >= static_cast<int>(raw[2].size()) ||
        j >= static_cast<int>(raw[1].size())) {
      break;
    }
    const double e1 = raw[0][j], e2 = raw[1][j], e4 = raw[2][j];
    const double r1 = (4.0 * e2 - e1) / 3.0;
    const double r1b = (4.0 * e4 - e2) / 3.0;
    const double r2 = (16.0 * r1b - r1) / 15.0;

    const auto u = eigenvector(finest, e4);
    const double resid = pencil_residual(finest, u, e4);
    const bool ok = std::abs(r2 - r1b) <= options.tolerance * std::abs(r2) + 1e-12 &&
                    resid <= 1e-8;

    res.eigenvalues.push_back(problem.physical_energy(r2));
    res.reduced.push_back(r2);
    res.richardson_estimate.push_back(problem.physical_energy(r1));
    res.grid_values.push_back({problem.physical_energy(e1), problem.physical_energy(e2),
                               problem.physical_energy(e4)});
    res.node_counts.push_back(count_nodes(u));
    res.residual_norms.push_back(resid);
    res.converged.push_back(ok);
    if (!ok) {
      failures.precision(17);
      failures << " level " << j << ": N=" << e1 << " 2N=" << e2 << " 4N=" << e4;
    }
  }
  if (options.throw_on_unconverged && !res.all_converged()) {
    throw Error(ErrorCode::NotConverged, "extrapolation did not settle;" + failures.str());
  }
  return res;
}

ResidualReport ode_residual(const DeformedRadialProblem& problem, double energy,
                            const std::function<double(double)>& fn, const GridSpec& grid,
                            PotentialSign sign) {
  const auto q = effective_radial_ode(problem, energy, sign);
  ResidualReport rep;
  const int N = grid.points;
  struct Sample {
    double value, residual, terms;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(std::max(N - 4, 0)));
  double sup = 0.0;
  for (int i = 2; i < N - 2; ++i) {
    const double t = (i + 0.5) / N;
    const double r = grid.mapping == GridMapping::Logarithmic
                         ? grid.r_min * std::pow(grid.r_max / grid.r_min, t)
                         : grid.r_min + t * (grid.r_max - grid.r_min);
    const double qr = q(r);
    const double h = 2e-3 / std::sqrt(std::abs(qr) + 1.0 / (r * r));
    const double f0 = fn(r);
    const double d2 = (-fn(r + 2 * h) + 16.0 * fn(r + h) - 30.0 * f0 + 16.0 * fn(r - h) -
                       fn(r - 2 * h)) /
                      (12.0 * h * h);
    if (!std::isfinite(d2) || !std::isfinite(f0)) continue;
    sup = std::max(sup, std::abs(f0));
    // Local operator scale: the same |q| + r^-2 that sets the stencil step.
    samples.push_back(
        {f0, std::abs(d2 + qr * f0), std::abs(d2) + (std::abs(qr) + 1.0 / (r * r)) * std::abs(f0)});
  }
  if (sup == 0.0) {
    rep.degenerate_function = true;
    return rep;
  }
  // Each point against its local scale, floored by |E~| sup|R| so that nodes
  // and tails do not divide by zero while an energy error in the bulk still shows.
  const double floor = std::abs(problem.reduced_energy(energy)) * sup;
  for (const auto& s : samples) {
    const double scale = s.terms + floor;
    if (scale > 0.0) rep.residual = std::max(rep.residual, s.residual / scale);
  }
  return rep;
}

LevelMatch match_level(const OracleResult& oracle, double target) {
  LevelMatch m;
  const auto& ev = oracle.eigenvalues;
  if (ev.empty()) return m;
  m.clamped = target < ev.front() || target > ev.back();
  std::size_t best = 0;
  for (std::size_t i = 1; i < ev.size(); ++i) {
    if (std::abs(ev[i] - target) < std::abs(ev[best] - target)) best = i;
  }
  m.index = static_cast<int>(best);
  m.node_count = oracle.node_counts[best];
  m.oracle_energy = ev[best];
  m.gap = std::abs(target - ev[best]);
  return m;
}

}  // namespace ncspectra::oracle
