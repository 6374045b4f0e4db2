#include "ncspectra/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace ncspectra::poly {

double evaluate(std::span<const double> coeffs, double x) noexcept {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<std::complex<double>> roots(std::span<const double> coeffs) {
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree <= 1) return {};
  const int k = static_cast<int>(degree) - 1;
  const double lead = coeffs[degree - 1];

  if (k == 1) return {std::complex<double>(-coeffs[0] / lead, 0.0)};

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(k, k);
  for (int i = 1; i < k; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < k; ++i) companion(i, k - 1) = -coeffs[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> out(k);
  for (int i = 0; i < k; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

int count_positive_real_roots(std::span<const double> coeffs, double tol) {
  int count = 0;
  for (const auto& z : roots(coeffs)) {
    if (std::abs(z.imag()) <= tol * (1.0 + std::abs(z.real())) && z.real() > 0.0) ++count;
  }
  return count;
}

std::vector<double> from_roots(std::span<const double> real_roots) {
  std::vector<double> h{1.0};
  for (double s : real_roots) {
    std::vector<double> next(h.size() + 1, 0.0);
    for (std::size_t j = 0; j < h.size(); ++j) {
      next[j + 1] += h[j];
      next[j] -= s * h[j];
    }
    h = std::move(next);
  }
  return h;
}

}  // namespace ncspectra::poly
