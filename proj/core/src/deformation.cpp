#include "ncspectra/deformation.hpp"

#include <cmath>
#include <string>

#include "ncspectra/error.hpp"

namespace ncspectra {

std::string_view to_string(Family family) noexcept {
  return family == Family::EvenPower ? "even" : "inverse";
}

Family parse_family(std::string_view text) {
  if (text == "even" || text == "EvenPower") return Family::EvenPower;
  if (text == "inverse" || text == "InversePower") return Family::InversePower;
  throw Error(ErrorCode::InvalidFamily,
              "unknown family '" + std::string(text) + "' (allowed: even, inverse)");
}

double DeformedRadialProblem::coefficient(int power) const noexcept {
  auto it = terms.find(power);
  return it == terms.end() ? 0.0 : it->second;
}

double DeformedRadialProblem::potential(double r) const noexcept {
  double v = 0.0;
  for (const auto& [power, coeff] : terms) {
    if (coeff != 0.0) v += coeff * std::pow(r, power);
  }
  return v;
}

double DeformedRadialProblem::effective_potential(double r) const noexcept {
  return potential(r) + centrifugal / (r * r);
}

int DeformedRadialProblem::leading_singular_power() const noexcept {
  for (const auto& [power, coeff] : terms) {
    if (coeff != 0.0) return power < 0 ? power : 0;
  }
  return 0;
}

namespace {

DeformedRadialProblem base_problem(const PotentialSpec& spec, const NCContext& ctx) {
  DeformedRadialProblem p;
  p.family = spec.family;
  p.source = spec;
  p.m = ctx.m;
  p.theta = ctx.theta;
  p.centrifugal = static_cast<double>(ctx.m) * static_cast<double>(ctx.m) - 0.25;
  return p;
}

}  // namespace

DeformedRadialProblem deform_even_power(const PotentialSpec& spec, const NCContext& ctx) {
  if (spec.family != Family::EvenPower) {
    throw Error(ErrorCode::InvalidFamily, "deform_even_power called with an inverse-power spec");
  }
  if (!(spec.a > 0.0)) {
    throw Error(ErrorCode::NonConfining, "even-power family needs a > 0, got a = " +
                                             std::to_string(spec.a));
  }
  const double tm = ctx.theta_m();
  DeformedRadialProblem p = base_problem(spec, ctx);
  p.terms = {{2, spec.a},
             {-2, spec.b},
             {-4, spec.c + (spec.b / 4.0) * tm},
             {-6, (spec.c / 2.0) * tm}};
  p.energy_shift = (spec.a / 2.0) * tm;
  return p;
}

DeformedRadialProblem deform_inverse_power(const PotentialSpec& spec, const NCContext& ctx) {
  if (spec.family != Family::InversePower) {
    throw Error(ErrorCode::InvalidFamily, "deform_inverse_power called with an even-power spec");
  }
  const double tm = ctx.theta_m();
  DeformedRadialProblem p = base_problem(spec, ctx);
  p.terms = {{-1, spec.a},
             {-2, spec.b},
             {-3, (spec.a / 2.0) * tm},
             {-4, (spec.b / 4.0) * tm}};
  p.energy_shift = 0.0;
  return p;
}

DeformedRadialProblem deform(const PotentialSpec& spec, const NCContext& ctx) {
  return spec.family == Family::EvenPower ? deform_even_power(spec, ctx)
                                          : deform_inverse_power(spec, ctx);
}

DeformedRadialProblem with_b(const DeformedRadialProblem& problem, double b) {
  PotentialSpec spec = problem.source;
  spec.b = b;
  return deform(spec, NCContext{problem.theta, problem.m});
}

double RadialOperator::operator()(double r) const noexcept {
  const double v = problem->potential(r);
  const double barrier = problem->centrifugal / (r * r);
  switch (sign) {
    case PotentialSign::PrintedPlus:
      return reduced_energy + v - barrier;
    case PotentialSign::PrintedCentrifugal:
      return reduced_energy - v + barrier;
    case PotentialSign::Standard:
      break;
  }
  return reduced_energy - v - barrier;
}

RadialOperator effective_radial_ode(const DeformedRadialProblem& problem, double energy,
                                    PotentialSign sign) {
  return RadialOperator{&problem, problem.reduced_energy(energy), sign};
}

}  // namespace ncspectra
