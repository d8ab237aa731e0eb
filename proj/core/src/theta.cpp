#include "zetareg/theta.hpp"

#include <cmath>
#include <numbers>

#include "zetareg/errors.hpp"

namespace zetareg {

namespace {
constexpr double absolute_floor = 1e-30;
constexpr int max_terms = 100000;
}  // namespace

double jacobi_theta1(double x, double tol) {
  if (!(x > 0.0)) throw domain_error("jacobi_theta1 requires x > 0");
  double sum = 0.0;
  for (int n = 1; n <= max_terms; ++n) {
    const double term = std::exp(-std::numbers::pi * n * static_cast<double>(n) * x);
    if (term < absolute_floor || term < tol * sum) break;
    sum += term;
  }
  return sum;
}

std::complex<double> jacobi_theta1(std::complex<double> x, double tol) {
  if (!(x.real() > 0.0)) throw domain_error("jacobi_theta1 requires Re(x) > 0");
  // q^(n^2) by the recurrence q^((n+1)^2) = q^(n^2) * q^(2n+1).
  const std::complex<double> q = std::exp(-std::numbers::pi * x);
  const std::complex<double> q2 = q * q;
  std::complex<double> term = q;
  std::complex<double> step = q * q2;  // q^3
  std::complex<double> sum = 0.0;
  for (int n = 1; n <= max_terms; ++n) {
    sum += term;
    term *= step;
    step *= q2;
    if (std::abs(term) <= tol * std::abs(sum) || term == 0.0) break;
  }
  return sum;
}

}  // namespace zetareg
