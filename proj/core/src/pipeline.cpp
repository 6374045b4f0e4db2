#include "ncspectra/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "detail.hpp"
#include "ncspectra/error.hpp"
#include "ncspectra/evenpower.hpp"
#include "ncspectra/invpower.hpp"
#include "ncspectra/oracle.hpp"

namespace ncspectra {

namespace detail {

std::optional<OracleLevel> oracle_level(const DeformedRadialProblem& problem, int index,
                                        int grid_points) {
  oracle::OracleOptions opts;
  opts.throw_on_unconverged = false;
  oracle::OracleResult res;
  try {
    res = oracle::solve_radial(problem, oracle::default_grid(problem, grid_points), index + 1,
                               opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoBoundState) return std::nullopt;
    throw;
  }
  if (static_cast<int>(res.eigenvalues.size()) <= index) return std::nullopt;
  return OracleLevel{res.eigenvalues[index], res.node_counts[index], res.converged[index]};
}

double residual_of(const DeformedRadialProblem& problem, double energy,
                   const std::function<double(double)>& fn, int grid_points, PotentialSign sign) {
  const auto grid = oracle::grid_for_energy(problem, energy, grid_points);
  const auto rep = oracle::ode_residual(problem, energy, fn, grid, sign);
  return rep.degenerate_function ? kMissing : rep.residual;
}

}  // namespace detail

namespace {

constexpr double kResidualContract = 1e-8;
constexpr double kGapContract = 1e-4;

struct Task {
  double theta;
  int m;
};

std::vector<Task> tasks_for(const RunConfig& config) {
  std::vector<double> thetas = config.theta;
  std::vector<int> ms = config.m;
  std::sort(thetas.begin(), thetas.end());
  thetas.erase(std::unique(thetas.begin(), thetas.end()), thetas.end());
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Task> tasks;
  for (double t : thetas) {
    for (int m : ms) tasks.push_back({t, m});
  }
  return tasks;
}

SpectrumRow base_row(const RunConfig& config, const Task& task, const DeformedRadialProblem& p) {
  SpectrumRow row;
  row.family = std::string(to_string(config.family));
  row.theta = task.theta;
  row.m = task.m;
  row.mode = std::string(to_string(config.mode));
  row.b_input = config.b;
  row.energy_shift = p.energy_shift;
  return row;
}

std::string status_of(const Error& e) { return std::string(to_string(e.code())); }

// Oracle cross-check of a closed-form level: fills oracle_E, gap, E_fixed_b
// and the verified flag.
void attach_oracle(const RunConfig& config, const DeformedRadialProblem& input,
                   const DeformedRadialProblem& solved, double residual, SpectrumRow& row) {
  const int pts = grid_points_for(config);
  const int index = std::max(row.nodes, 0);
  try {
    if (const auto lvl = detail::oracle_level(solved, index, pts)) {
      row.oracle_E = lvl->energy;
      row.gap = detail::relative_gap(row.E_physical, lvl->energy);
    }
  } catch (const Error& e) {
    row.status = "oracle_" + status_of(e);
  }
  try {
    if (const auto lvl = detail::oracle_level(input, index, pts)) row.E_fixed_b = lvl->energy;
  } catch (const Error&) {
  }
  row.ode_residual = residual;
  row.oracle_verified = std::isfinite(row.gap) && row.gap <= kGapContract &&
                        std::isfinite(residual) && residual <= kResidualContract;
  if (row.status == "ok" && !row.oracle_verified) row.status = "mismatch";
}

struct EvenCandidate {
  DeformedRadialProblem problem;
  evenpower::SeriesSolution solution;
};

std::optional<EvenCandidate> even_candidate(const DeformedRadialProblem& p, SignMode mode, int n,
                                            double b_input, std::string* status) {
  try {
    const auto roots = evenpower::solve_chain_for_b(p, mode, n);
    if (roots.empty()) {
      if (status) *status = "no_constraint_root";
      return std::nullopt;
    }
    const double b = *std::min_element(roots.begin(), roots.end(), [&](double x, double y) {
      return std::abs(x - b_input) < std::abs(y - b_input);
    });
    const auto q = with_b(p, b);
    return EvenCandidate{q, evenpower::closed_form_energy(q, mode, n)};
  } catch (const Error& e) {
    if (status) *status = status_of(e);
    return std::nullopt;
  }
}

std::vector<SpectrumRow> even_rows(const RunConfig& config, const Task& task) {
  const auto p = deform(config.potential(), NCContext{task.theta, task.m});
  SpectrumRow row = base_row(config, task, p);
  row.level = config.n;
  if (task.m == 0) {
    row.status = "s_level_excluded";
    return {row};
  }
  std::string st_r = "ok", st_p = "ok";
  const auto red = even_candidate(p, SignMode::Normalizable, config.n, config.b, &st_r);
  const auto lit = even_candidate(p, SignMode::Literal, config.n, config.b, &st_p);
  if (red) {
    row.b_solved_rederived = red->problem.coefficient(-2);
    row.E_physical_rederived = red->solution.energy_physical;
  }
  if (lit) {
    row.b_solved_paper = lit->problem.coefficient(-2);
    row.E_physical_paper = lit->solution.energy_physical;
  }
  const bool paper = config.mode == SignMode::Literal;
  const auto& chosen = paper ? lit : red;
  row.status = paper ? st_p : st_r;
  if (!chosen) {
    if (config.oracle) {
      try {
        if (const auto lvl = detail::oracle_level(p, config.n, grid_points_for(config))) {
          row.E_fixed_b = lvl->energy;
        }
      } catch (const Error&) {
      }
    }
    return {row};
  }
  const auto& sol = chosen->solution;
  row.b_solved = chosen->problem.coefficient(-2);
  row.E_physical = sol.energy_physical;
  row.E_reduced = sol.energy_reduced;
  row.nodes = sol.nodes;
  row.normalizable = sol.normalizable;
  row.constraint_residual = std::max(sol.chain_residual, sol.closure_residual);
  if (config.oracle) {
    const double res = detail::residual_of(
        chosen->problem, sol.energy_physical,
        [&](double r) { return evenpower::radial_function(sol, r); }, grid_points_for(config));
    attach_oracle(config, p, chosen->problem, res, row);
  }
  return {row};
}

std::vector<invpower::InvPowerSolution> normalizable_levels(const DeformedRadialProblem& p,
                                                           int degree, SignMode mode,
                                                           std::string* status) {
  std::vector<invpower::InvPowerSolution> out;
  try {
    for (auto& s : invpower::spectrum(p, degree, mode)) {
      if (s.normalizable) out.push_back(std::move(s));
    }
    if (out.empty() && status) *status = "no_normalizable_solution";
  } catch (const Error& e) {
    if (status) *status = status_of(e);
  }
  return out;
}

std::vector<SpectrumRow> inverse_rows(const RunConfig& config, const Task& task) {
  const auto p = deform(config.potential(), NCContext{task.theta, task.m});
  const int k = config.degree_for(task.m);
  std::string st_r = "ok", st_p = "ok";
  const auto red = normalizable_levels(p, k, SignMode::Normalizable, &st_r);
  const auto lit = normalizable_levels(p, k, SignMode::Literal, &st_p);
  const bool paper = config.mode == SignMode::Literal;
  const auto& chosen = paper ? lit : red;

  std::vector<SpectrumRow> rows;
  if (chosen.empty()) {
    SpectrumRow row = base_row(config, task, p);
    row.status = paper ? st_p : st_r;
    if (config.oracle) {
      try {
        if (const auto lvl = detail::oracle_level(p, 0, grid_points_for(config))) {
          row.E_fixed_b = lvl->energy;
        }
      } catch (const Error&) {
      }
    }
    rows.push_back(row);
    return rows;
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const auto& s = chosen[i];
    SpectrumRow row = base_row(config, task, p);
    row.level = static_cast<int>(i);
    row.status = "ok";
    if (i < red.size()) {
      row.b_solved_rederived = red[i].ansatz.b;
      row.E_physical_rederived = red[i].energy_physical;
    }
    if (i < lit.size()) {
      row.b_solved_paper = lit[i].ansatz.b;
      row.E_physical_paper = lit[i].energy_physical;
    }
    row.b_solved = s.ansatz.b;
    row.E_physical = s.energy_physical;
    row.E_reduced = s.energy_reduced;
    row.nodes = s.nodes;
    row.normalizable = s.normalizable;
    row.branch = std::string(invpower::to_string(s.branch));
    row.constraint_residual = s.constraint_residual;
    if (config.oracle) {
      const auto q = with_b(p, s.ansatz.b);
      const double res = detail::residual_of(
          q, s.energy_physical, [&](double r) { return invpower::radial_function(s.ansatz, r); },
          grid_points_for(config));
      attach_oracle(config, p, q, res, row);
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<SpectrumRow> rows_for(const RunConfig& config, const Task& task) {
  try {
    return config.family == Family::EvenPower ? even_rows(config, task)
                                              : inverse_rows(config, task);
  } catch (const Error& e) {
    const auto p = deform(config.potential(), NCContext{task.theta, task.m});
    SpectrumRow row = base_row(config, task, p);
    row.status = status_of(e);
    return {row};
  }
}

std::vector<SpectrumRow> collect(const RunConfig& config,
                                 const std::function<std::vector<SpectrumRow>(const Task&)>& fn) {
  const auto tasks = tasks_for(config);
  std::vector<std::vector<SpectrumRow>> parts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { parts[i] = fn(tasks[i]); });
  std::vector<SpectrumRow> rows;
  for (auto& part : parts) {
    for (auto& r : part) rows.push_back(std::move(r));
  }
  return rows;
}

Report make_report(const RunConfig& config, const std::string& command) {
  config.validate();
  Report rep;
  rep.command = command;
  return rep;
}

// Oracle reference level at the input b for the splitting fit.
std::optional<double> fixed_b_level(const RunConfig& config, double theta, int m) {
  const auto p = deform(config.potential(), NCContext{theta, m});
  const int index = config.family == Family::EvenPower ? config.n : 0;
  try {
    if (const auto lvl = detail::oracle_level(p, index, grid_points_for(config))) {
      return lvl->energy;
    }
  } catch (const Error&) {
  }
  return std::nullopt;
}

}  // namespace

int grid_points_for(const RunConfig& config) {
  return config.grid_points > 0 ? config.grid_points : oracle::default_grid_points();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_lock;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_lock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double inverse_branch_limit(double a, int degree) {
  const double k1 = degree + 1.0;
  return -a * a / (4.0 * k1 * k1);
}

FitRow fit_splitting(const std::string& family, int m, const std::string& source,
                     const std::vector<double>& x, const std::vector<double>& delta) {
  FitRow fit;
  fit.family = family;
  fit.m = m;
  fit.source = source;
  fit.points = static_cast<int>(x.size());
  if (x.size() < 2) return fit;

  // delta = s x + q x^2 through the origin.
  double sxx = 0, sx3 = 0, sx4 = 0, sxy = 0, sx2y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i], x2 = xi * xi;
    sxx += x2;
    sx3 += x2 * xi;
    sx4 += x2 * x2;
    sxy += xi * delta[i];
    sx2y += x2 * delta[i];
  }
  const double det = sxx * sx4 - sx3 * sx3;
  if (det != 0.0) {
    fit.slope = (sxy * sx4 - sx2y * sx3) / det;
    fit.quadratic = (sxx * sx2y - sx3 * sxy) / det;
    double ss = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = delta[i] - fit.slope * x[i] - fit.quadratic * x[i] * x[i];
      ss += r * r;
      peak = std::max(peak, std::abs(delta[i]));
    }
    fit.fit_residual = peak > 0.0 ? std::sqrt(ss / x.size()) / peak : 0.0;
  }

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0 && delta[i] != 0.0) {
      lx.push_back(std::log(std::abs(x[i])));
      ly.push_back(std::log(std::abs(delta[i])));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i] / n;
      my += ly[i] / n;
    }
    double cxx = 0, cxy = 0, cyy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      cxx += (lx[i] - mx) * (lx[i] - mx);
      cxy += (lx[i] - mx) * (ly[i] - my);
      cyy += (ly[i] - my) * (ly[i] - my);
    }
    if (cxx > 0.0) {
      fit.exponent = cxy / cxx;
      fit.r_squared = cyy > 0.0 ? (cxy * cxy) / (cxx * cyy) : 1.0;
    }
  }
  return fit;
}

Report run_spectrum(const RunConfig& config) {
  Report rep = make_report(config, "spectrum");
  rep.rows = collect(config, [&](const Task& t) { return rows_for(config, t); });
  return rep;
}

Report run_sweep(const RunConfig& config) {
  const auto nonzero = std::count_if(config.theta.begin(), config.theta.end(),
                                     [](double t) { return t != 0.0; });
  if (nonzero < 3) {
    throw Error(ErrorCode::ConfigError, "sweep needs at least three nonzero theta values");
  }
  Report rep = make_report(config, "sweep");
  rep.rows = collect(config, [&](const Task& t) { return rows_for(config, t); });

  std::vector<int> ms = config.m;
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  const std::string family(to_string(config.family));

  if (config.oracle) {
    std::vector<Task> tasks = tasks_for(config);
    for (int m : ms) tasks.push_back({0.0, m});
    std::vector<std::optional<double>> levels(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
      levels[i] = fixed_b_level(config, tasks[i].theta, tasks[i].m);
    });
    for (int m : ms) {
      std::optional<double> ref;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].m == m && tasks[i].theta == 0.0 && levels[i]) ref = levels[i];
      }
      std::vector<double> x, d;
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (tasks[i].m != m || tasks[i].theta == 0.0 || !levels[i] || !ref) continue;
        if (std::find(x.begin(), x.end(), tasks[i].theta * m) != x.end()) continue;
        x.push_back(tasks[i].theta * m);
        d.push_back(*levels[i] - *ref);
      }
      rep.fits.push_back(fit_splitting(family, m, "oracle_fixed_b", x, d));
    }
  }

  for (int m : ms) {
    const double ref = config.family == Family::InversePower
                           ? inverse_branch_limit(config.a, config.degree_for(m))
                           : 0.0;
    // Per theta, the even family has a single row at level n; the inverse
    // family follows the solution closest to the small-theta limit so that
    // deep or shallow companions never switch the branch being fitted.
    std::map<double, double> branch;
    for (const auto& row : rep.rows) {
      if (row.m != m || row.theta == 0.0 || row.status != "ok" || !std::isfinite(row.E_physical)) {
        continue;
      }
      if (config.family == Family::EvenPower && row.level != config.n) continue;
      const double delta = row.E_physical - ref;
      // The inverse branch ends in a fold at finite theta; past it the
      // nearest survivor belongs to another branch entirely.
      if (config.family == Family::InversePower && std::abs(delta) > std::abs(ref)) continue;
      auto [it, fresh] = branch.emplace(row.theta, delta);
      if (!fresh && std::abs(delta) < std::abs(it->second)) it->second = delta;
    }
    std::vector<double> x, d;
    for (const auto& [theta, delta] : branch) {
      x.push_back(theta * m);
      d.push_back(delta);
    }
    rep.fits.push_back(fit_splitting(family, m, "closed_form", x, d));
  }
  return rep;
}

Report run_oracle(const RunConfig& config) {
  Report rep = make_report(config, "oracle");
  const int pts = grid_points_for(config);
  rep.rows = collect(config, [&](const Task& t) {
    const auto p = deform(config.potential(), NCContext{t.theta, t.m});
    std::vector<SpectrumRow> rows;
    try {
      oracle::OracleOptions opts;
      opts.throw_on_unconverged = false;
      const auto res = oracle::solve_radial(p, oracle::default_grid(p, pts), config.n + 1, opts);
      for (std::size_t j = 0; j < res.eigenvalues.size(); ++j) {
        SpectrumRow row = base_row(config, t, p);
        row.level = static_cast<int>(j);
        row.status = res.converged[j] ? "ok" : "not_converged";
        row.b_solved = config.b;
        row.E_physical = res.eigenvalues[j];
        row.E_reduced = res.reduced[j];
        row.oracle_E = res.eigenvalues[j];
        row.nodes = res.node_counts[j];
        row.E_fixed_b = res.eigenvalues[j];
        row.oracle_verified = res.converged[j];
        row.normalizable = true;
        rows.push_back(row);
      }
    } catch (const Error& e) {
      SpectrumRow row = base_row(config, t, p);
      row.status = status_of(e);
      rows.push_back(row);
    }
    return rows;
  });
  return rep;
}

}  // namespace ncspectra
