#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "ncspectra/error.hpp"
#include "ncspectra/oracle.hpp"

using namespace ncspectra;
using namespace ncspectra::oracle;
using fixtures::close_rel;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("oscillator calibration") {
  for (const int m : {0, 1, 2}) {
    const auto p = fixtures::oscillator(m);
    const auto res = solve_radial(p, default_grid(p), 3);
    REQUIRE(res.eigenvalues.size() == 3);
    CHECK(res.all_converged());
    for (int n = 0; n < 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      CHECK(close_rel(res.eigenvalues[n], 2.0 * (2 * n + m + 1), 1e-6));
      CHECK(res.node_counts[n] == n);
      CHECK(res.residual_norms[n] <= 1e-8);
    }
  }
}

TEST_CASE("Coulomb calibration") {
  // E = -1 / (n_r + |m| + 1/2)^2 for V = -2/r.
  for (const int m : {0, 1}) {
    const auto p = fixtures::coulomb(m);
    const auto res = solve_radial(p, default_grid(p), 2);
    for (int n = 0; n < 2; ++n) {
      CHECK(close_rel(res.eigenvalues[n], -1.0 / std::pow(n + m + 0.5, 2), 1e-6));
      CHECK(res.node_counts[n] == n);
    }
  }
}

TEST_CASE("free particle has no bound state") {
  DeformedRadialProblem free;
  free.family = Family::InversePower;
  free.m = 1;
  free.centrifugal = 0.75;
  GridSpec g;
  g.r_min = 1e-3;
  g.r_max = 50.0;
  CHECK(code_of([&] { solve_radial(free, g, 1); }) == ErrorCode::NoBoundState);
}

TEST_CASE("grid validation and fall to the centre") {
  const auto p = fixtures::oscillator(1);
  GridSpec bad;
  bad.r_min = 2.0;
  bad.r_max = 1.0;
  CHECK(code_of([&] { solve_radial(p, bad, 1); }) == ErrorCode::InvalidGrid);
  bad = GridSpec{};
  bad.points = 100;
  CHECK(code_of([&] { solve_radial(p, bad, 1); }) == ErrorCode::InvalidGrid);

  const auto core = fixtures::even_reference(15.0);
  GridSpec uniform = default_grid(core);
  uniform.mapping = GridMapping::Uniform;
  CHECK(code_of([&] { solve_radial(core, uniform, 1); }) == ErrorCode::InvalidGrid);

  const auto fall = deform({Family::EvenPower, 1, 1, 1}, {0.1, -1});
  CHECK(code_of([&] { default_grid(fall); }) == ErrorCode::SingularAttraction);
}

TEST_CASE("level matching") {
  OracleResult res;
  res.eigenvalues = {2.0, 6.0, 10.0};
  res.node_counts = {0, 1, 2};
  const auto hit = match_level(res, 6.0);
  CHECK(hit.index == 1);
  CHECK(hit.node_count == 1);
  CHECK(hit.gap == 0.0);
  CHECK_FALSE(hit.clamped);

  const auto high = match_level(res, 40.0);
  CHECK(high.index == 2);
  CHECK(high.gap == 30.0);
  CHECK(high.clamped);
  const auto low = match_level(res, -1.0);
  CHECK(low.index == 0);
  CHECK(low.clamped);
}

TEST_CASE("ODE residual") {
  const auto p = fixtures::oscillator(0);
  const auto grid = grid_for_energy(p, 2.0);
  // R = sqrt(r) exp(-r^2/2) solves R'' + (2 - r^2 + 1/(4 r^2)) R = 0.
  const auto exact = ode_residual(
      p, 2.0, [](double r) { return std::sqrt(r) * std::exp(-r * r / 2.0); }, grid);
  CHECK(exact.residual <= 1e-8);
  CHECK_FALSE(exact.degenerate_function);

  const auto wrong = ode_residual(
      p, 2.5, [](double r) { return std::sqrt(r) * std::exp(-r * r / 2.0); }, grid);
  CHECK(wrong.residual > 1e-3);

  const auto zero = ode_residual(p, 2.0, [](double) { return 0.0; }, grid);
  CHECK(zero.residual == 0.0);
  CHECK(zero.degenerate_function);
}

TEST_CASE("(theta, m) and (-theta, -m) give the same levels") {
  const auto p = deform({Family::EvenPower, 1, 15, 1}, {0.05, 1});
  const auto q = deform({Family::EvenPower, 1, 15, 1}, {-0.05, -1});
  const auto x = solve_radial(p, default_grid(p), 2);
  const auto y = solve_radial(q, default_grid(q), 2);
  for (int i = 0; i < 2; ++i) CHECK(close_rel(x.eigenvalues[i], y.eigenvalues[i], 1e-10));
}

TEST_CASE("agreement with an independent shooting integration") {
  // Two-sided adaptive shooting with WKB starting values, computed outside the library.
  struct Case {
    PotentialSpec spec;
    NCContext ctx;
    double energy;
  };
  for (const Case& c : {Case{{Family::EvenPower, 1, 15, 1}, {0.05, 1}, 10.121343823076602},
                        Case{{Family::InversePower, -2, 0.5, 0}, {0.01, 1}, -0.33711676377989547},
                        Case{{Family::InversePower, -2, 0.5, 0}, {0.01, 2}, -0.14565064068195177}}) {
    const auto p = deform(c.spec, c.ctx);
    const auto res = solve_radial(p, default_grid(p), 1);
    CAPTURE(c.energy);
    CHECK(close_rel(res.eigenvalues[0], c.energy, 1e-8));
  }
}

TEST_CASE("doubling the resolution moves converged levels by < 1e-8") {
  const auto p = deform({Family::InversePower, -2, 0.5, 0}, {0.01, 1});
  auto g = default_grid(p, 2000);
  const auto coarse = solve_radial(p, g, 2);
  g.points = 4000;
  const auto fine = solve_radial(p, g, 2);
  for (int i = 0; i < 2; ++i) CHECK(close_rel(coarse.eigenvalues[i], fine.eigenvalues[i], 1e-8));
}

TEST_CASE("Dirichlet box levels fall as the box grows") {
  const auto p = fixtures::oscillator(1);
  GridSpec g;
  g.auto_expand = false;
  g.r_min = 1e-2;
  double last = INFINITY;
  for (const double r_max : {2.0, 2.5, 3.0, 4.0}) {
    g.r_max = r_max;
    g.points = static_cast<int>(1000 * std::log(r_max / g.r_min));
    OracleOptions o;
    o.throw_on_unconverged = false;
    const double e = solve_radial(p, g, 1, o).eigenvalues[0];
    CHECK(e < last);
    last = e;
  }
}
