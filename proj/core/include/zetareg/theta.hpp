#pragma once

#include <complex>

namespace zetareg {

inline constexpr double default_theta_truncation_tol = 1e-16;

/// theta_1(x) = sum_{n>=1} exp(-n^2 pi x), half of (Jacobi theta(x) - 1).
///
/// Summation stops once the next term falls below tol times the partial sum
/// or below the absolute floor 1e-30; terms under the floor are dropped, so
/// the result is exactly 0 for x beyond roughly 22. Throws domain_error for
/// x <= 0.
double jacobi_theta1(double x, double tol = default_theta_truncation_tol);

/// theta_1 at complex x with Re(x) > 0, truncated on relative size only.
std::complex<double> jacobi_theta1(std::complex<double> x, double tol = default_theta_truncation_tol);

}  // namespace zetareg
