#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ncspectra::poly {

/// Horner evaluation; coeffs[k] multiplies x^k.
double evaluate(std::span<const double> coeffs, double x) noexcept;

/// All complex roots via the companion matrix. Trailing zero coefficients
/// are trimmed; a constant polynomial has no roots.
std::vector<std::complex<double>> roots(std::span<const double> coeffs);

/// Number of distinct real roots strictly greater than zero (roots with
/// |Im| <= tol * (1 + |Re|) count as real).
int count_positive_real_roots(std::span<const double> coeffs, double tol = 1e-9);

/// Monic coefficients h_0..h_k of prod_j (x - roots[j]).
std::vector<double> from_roots(std::span<const double> real_roots);

}  // namespace ncspectra::poly
