#include "zetareg/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "zetareg/errors.hpp"

namespace zetareg {

namespace {

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double half_log_two_pi = 0.5 * std::log(2.0 * std::numbers::pi);

// Valid for Re(z) >= 1/2; every log here stays on its principal branch.
complex log_gamma_right(complex z) {
  z -= 1.0;
  complex series = lanczos_coeffs[0];
  for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i) {
    series += lanczos_coeffs[i] / (z + static_cast<double>(i));
  }
  const complex t = z + lanczos_g + 0.5;
  return half_log_two_pi + (z + 0.5) * std::log(t) - t + std::log(series);
}

bool is_nonpositive_integer(complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

complex sin_pi(complex z) {
  // Reduce the real part to [-1/2, 1/2] so integer arguments give exact zeros.
  const double x = z.real();
  const double n = std::round(x);
  const double r = x - n;
  const double sign = std::fmod(std::abs(n), 2.0) == 1.0 ? -1.0 : 1.0;
  const double pr = std::numbers::pi * r;
  const double py = std::numbers::pi * z.imag();
  return sign * complex(std::sin(pr) * std::cosh(py), std::cos(pr) * std::sinh(py));
}

complex log_gamma(complex z) {
  if (is_nonpositive_integer(z)) throw pole_error("log_gamma: pole at a nonpositive integer");
  if (z.real() >= 0.5) return log_gamma_right(z);
  // Shift right with the recurrence: the sum of principal logs keeps the
  // result on the principal branch, which the reflection formula does not.
  const auto shift = static_cast<int>(std::ceil(0.5 - z.real()));
  complex log_product = 0.0;
  for (int k = 0; k < shift; ++k) log_product += std::log(z + static_cast<double>(k));
  return log_gamma_right(z + static_cast<double>(shift)) - log_product;
}

complex reciprocal_gamma(complex z) {
  if (z.real() >= 0.5) return std::exp(-log_gamma_right(z));
  // Reflection: 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi.
  return sin_pi(z) * std::exp(log_gamma_right(1.0 - z)) / std::numbers::pi;
}

}  // namespace zetareg
