#pragma once

// Shared reference problems and values for the test suites. Frozen numbers
// come from independent computations kept outside the library: symbolic
// power matching of the closed-form ansatz and two-sided ODE shooting.

#include <cmath>

#include "ncspectra/deformation.hpp"

namespace ncspectra::fixtures {

inline DeformedRadialProblem oscillator(int m) {
  return deform({Family::EvenPower, 1.0, 0.0, 0.0}, {0.0, m});
}

inline DeformedRadialProblem coulomb(int m, double b = 0.0) {
  return deform({Family::InversePower, -2.0, b, 0.0}, {0.0, m});
}

/// Even family a = 1, c = 1, theta = 0.1, m = 1 at a given b.
inline DeformedRadialProblem even_reference(double b) {
  return deform({Family::EvenPower, 1.0, b, 1.0}, {0.1, 1});
}

// Truncation roots for the even reference (symbolic matching of powers).
inline constexpr double kEvenN0B = 15.285340706830104420;
inline constexpr double kEvenN0Reduced = 10.181088998985419266;
inline constexpr double kEvenN0Nu = 4.5905444994927096330;
inline constexpr double kEvenN0BUpper = 188.93757165317326044;
inline constexpr double kEvenN0ReducedUpper = 29.595998641011215877;
inline constexpr double kEvenN0BPrinted = 1.1361190815700958640;  // growing-exponent variant
inline constexpr double kEvenN1B = 14.9637841551325434;
inline constexpr double kEvenN1Reduced = 14.1451378835751107;
inline constexpr double kEvenN1BUpper = 189.048721527230418;
inline constexpr double kEvenN1ReducedUpper = 33.6084255747153331;

inline bool close_rel(double x, double y, double tol) {
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace ncspectra::fixtures
