#include "zetareg/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "zetareg/errors.hpp"
#include "zetareg/gamma.hpp"
#include "zetareg/quadrature.hpp"
#include "zetareg/theta.hpp"

namespace zetareg {

namespace {

constexpr double pi = std::numbers::pi;

// B_{2j} / (2j)! for j = 1..12.
constexpr std::array<double, 12> bernoulli_over_factorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
    43867.0 / 798.0 / 6402373705728000.0,
    -174611.0 / 330.0 / 2432902008176640000.0,
    854513.0 / 138.0 / 1.1240007277776077e21,
    -236364091.0 / 2730.0 / 6.204484017332394e23};

// Rotation of the integration ray. Terms along the ray at angle theta are of
// size exp(-theta |tau| / 2) while the completed zeta is of size
// exp(-pi |tau| / 4); keeping the gap at exp(ray_gap) bounds the cancellation.
constexpr double ray_gap = 3.0;

double ray_angle(double tau) {
  const double a = std::abs(tau);
  if (a * (pi / 2.0) <= 2.0 * ray_gap) return 0.0;
  return std::copysign(pi / 2.0 - 2.0 * ray_gap / a, tau);
}

complex real_if_real(complex s, complex v) {
  return s.imag() == 0.0 ? complex(v.real(), 0.0) : v;
}

}  // namespace

std::string_view to_string(zeta_method m) {
  switch (m) {
    case zeta_method::dirichlet_series: return "series";
    case zeta_method::theta_continuation: return "continuation";
  }
  return "unknown";
}

void zeta_config::validate() const {
  if (!(series_cutoff_re > 1.0)) throw domain_error("series_cutoff_re must exceed 1");
  if (!(quadrature_tol > 0.0) || !(theta_truncation_tol > 0.0) || !(im_domain_limit > 0.0) ||
      !(derivative_step > 0.0)) {
    throw domain_error("zeta tolerances must be positive");
  }
}

zeta_engine::zeta_engine(zeta_config config) : config_(config) { config_.validate(); }

void zeta_engine::check_height(complex s) const {
  if (std::abs(s.imag()) > config_.im_domain_limit) {
    throw accuracy_error("|Im s| = " + std::to_string(std::abs(s.imag())) +
                         " exceeds the continuation height limit " +
                         std::to_string(config_.im_domain_limit));
  }
}

complex zeta_engine::dirichlet_impl(complex s, double tol, bool minus_one, double* error) const {
  const double abs_s = std::abs(s);
  std::size_t n_terms = std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(abs_s)));
  for (int attempt = 0; attempt < 12; ++attempt, n_terms *= 2) {
    complex sum = 0.0;
    for (std::size_t n = minus_one ? 2 : 1; n < n_terms; ++n) {
      sum += std::exp(-s * std::log(static_cast<double>(n)));
    }
    const double big_n = static_cast<double>(n_terms);
    const double log_n = std::log(big_n);
    const complex n_pow = std::exp(-s * log_n);  // N^{-s}
    sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;

    // Euler-Maclaurin corrections; rising factorial s (s+1) ... (s+2j-2).
    complex rising = s;
    complex n_shift = n_pow / big_n;  // N^{-s-1}
    double last = std::abs(n_shift) * abs_s;
    bool converged = false;
    for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
      const complex term = bernoulli_over_factorial[j] * rising * n_shift;
      const double mag = std::abs(term);
      if (j > 0 && mag > last) break;  // asymptotic series started to diverge
      sum += term;
      last = mag;
      const double k = 2.0 * static_cast<double>(j);
      rising *= (s + k + 1.0) * (s + k + 2.0);
      n_shift /= big_n * big_n;
      if (mag <= 0.1 * tol) {
        converged = true;
        break;
      }
    }
    if (converged || last <= tol) {
      if (error) *error = last;
      return sum;
    }
  }
  throw accuracy_error("Dirichlet series did not reach the requested tolerance");
}

complex zeta_engine::zeta_dirichlet(complex s, double tol) const {
  if (s.real() < config_.series_cutoff_re) {
    throw domain_error("zeta_dirichlet requires Re(s) >= " +
                       std::to_string(config_.series_cutoff_re));
  }
  return real_if_real(s, dirichlet_impl(s, tol, false, nullptr));
}

complex zeta_engine::dirichlet_derivative(complex s, double tol) const {
  const double abs_s = std::abs(s);
  std::size_t n_terms = std::max<std::size_t>(10, static_cast<std::size_t>(std::ceil(abs_s)));
  for (int attempt = 0; attempt < 12; ++attempt, n_terms *= 2) {
    complex sum = 0.0;
    for (std::size_t n = 2; n < n_terms; ++n) {
      const double ln = std::log(static_cast<double>(n));
      sum -= ln * std::exp(-s * ln);
    }
    const double big_n = static_cast<double>(n_terms);
    const double log_n = std::log(big_n);
    const complex n_pow = std::exp(-s * log_n);
    const complex sm1 = s - 1.0;
    sum += n_pow * big_n * (-log_n / sm1 - 1.0 / (sm1 * sm1));
    sum -= 0.5 * log_n * n_pow;

    complex rising = s;
    complex rising_log_deriv = 1.0 / s;  // d/ds log of the rising factorial
    complex n_shift = n_pow / big_n;
    double last = std::abs(n_shift) * abs_s * (1.0 + log_n);
    bool converged = false;
    for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
      const complex term =
          bernoulli_over_factorial[j] * n_shift * rising * (rising_log_deriv - log_n);
      const double mag = std::abs(term);
      if (j > 0 && mag > last) break;
      sum += term;
      last = mag;
      const double k = 2.0 * static_cast<double>(j);
      rising *= (s + k + 1.0) * (s + k + 2.0);
      rising_log_deriv += 1.0 / (s + k + 1.0) + 1.0 / (s + k + 2.0);
      n_shift /= big_n * big_n;
      if (mag <= 0.1 * tol) {
        converged = true;
        break;
      }
    }
    if (converged || last <= tol) return sum;
  }
  throw accuracy_error("differentiated Dirichlet series did not converge");
}

complex zeta_engine::zeta_minus_one(complex s) const {
  if (s.real() >= config_.series_cutoff_re) {
    return real_if_real(s, dirichlet_impl(s, 1e-17, true, nullptr));
  }
  return zeta_continued(s) - 1.0;
}

complex zeta_engine::euler_product(complex s, const number_tables& tables) const {
  if (s.real() < config_.series_cutoff_re) {
    throw domain_error("euler_product requires Re(s) >= " +
                       std::to_string(config_.series_cutoff_re));
  }
  complex product = 1.0;
  for (std::uint32_t p : tables.primes()) {
    product /= 1.0 - std::exp(-s * std::log(static_cast<double>(p)));
  }
  return real_if_real(s, product);
}

zeta_engine::theta_split zeta_engine::theta_integrals(complex s, double rel_tol) const {
  const double theta = ray_angle(s.imag());
  const complex w = std::polar(1.0, theta);
  const complex w_conj = std::conj(w);
  const double c = std::cos(theta);

  const complex a1 = 0.5 * s - 1.0;          // exponent on the ray at +theta
  const complex a2 = 0.5 * (1.0 - s) - 1.0;  // exponent on the ray at -theta
  const double growth = std::max({a1.real(), a2.real(), 0.0});

  // Truncate the ray where exp(-pi c (R - 1)) R^growth drops below the tolerance.
  const double target = 1e-3 * rel_tol;
  double upper = 2.0;
  while (std::exp(-pi * c * (upper - 1.0)) * std::pow(upper, growth) > target) upper += 0.5;

  const double theta_tol = config_.theta_truncation_tol;
  auto integrand = [&](double r) {
    const double log_r = std::log(r);
    const complex x1 = r * w;
    const complex x2 = r * w_conj;
    const complex f1 = jacobi_theta1(x1, theta_tol) * std::exp(a1 * complex(log_r, theta)) * w;
    const complex f2 =
        jacobi_theta1(x2, theta_tol) * std::exp(a2 * complex(log_r, -theta)) * w_conj;
    return f1 + f2;
  };
  const auto r = quadrature::integrate(integrand, 1.0, upper, 0.0, rel_tol, 20000);
  return {r.value, w_conj, std::max(r.error, 1e-16 * r.abs_integral)};
}

complex zeta_engine::zeta_continued_impl(complex s, double rel_tol, double* error) const {
  if (s == complex(1.0, 0.0)) throw pole_error("pole at s=1");
  check_height(s);
  const auto split = theta_integrals(s, rel_tol);
  const complex pole_one = std::pow(split.w_conj, 0.5 * (1.0 - s)) / (s - 1.0);
  const complex pole_zero = std::pow(split.w_conj, -0.5 * s);
  const complex pi_pow = std::exp(0.5 * s * std::log(pi));
  const complex rg = reciprocal_gamma(0.5 * s);
  // 1 / (s Gamma(s/2)) = 1 / (2 Gamma(s/2 + 1)) keeps s = 0 free of 0/0.
  const complex value =
      pi_pow * ((pole_one + split.outer) * rg - 0.5 * pole_zero * reciprocal_gamma(0.5 * s + 1.0));
  if (error) {
    *error = std::abs(pi_pow * rg) * split.error_estimate +
             4.0 * std::numeric_limits<double>::epsilon() * std::abs(value);
  }
  return real_if_real(s, value);
}

complex zeta_engine::zeta_continued(complex s) const {
  return zeta_continued_impl(s, config_.quadrature_tol, nullptr);
}

zeta_result zeta_engine::evaluate(complex s) const {
  if (s == complex(1.0, 0.0)) throw pole_error("pole at s=1");
  double err = 0.0;
  if (s.real() >= config_.series_cutoff_re) {
    const complex v = real_if_real(s, dirichlet_impl(s, 1e-15, false, &err));
    return {v, err, zeta_method::dirichlet_series};
  }
  const complex v = zeta_continued_impl(s, config_.quadrature_tol, &err);
  return {v, err, zeta_method::theta_continuation};
}

zeta_result zeta_engine::evaluate_derivative(complex s) const {
  if (s.real() >= config_.series_cutoff_re) {
    const complex v = real_if_real(s, dirichlet_derivative(s, 1e-15));
    return {v, 1e-15, zeta_method::dirichlet_series};
  }
  const double h = config_.derivative_step;
  if (std::abs(s - 1.0) < 10.0 * h) throw pole_error("zeta_derivative: too close to the pole at s=1");
  const double tight = std::min(config_.quadrature_tol, 1e-14);
  auto f = [&](complex z) { return zeta_continued_impl(z, tight, nullptr); };
  const complex d1 = (f(s + h) - f(s - h)) / (2.0 * h);
  const complex d2 = (f(s + 0.5 * h) - f(s - 0.5 * h)) / h;
  const complex richardson = (4.0 * d2 - d1) / 3.0;
  // |d2 - richardson| bounds the O(h^2) term the extrapolation removed.
  const double err = std::abs(d2 - richardson) +
                     1e-14 * std::abs(f(s)) / h;
  return {real_if_real(s, richardson), err, zeta_method::theta_continuation};
}

complex zeta_engine::completed(complex s) const {
  if (s == complex(0.0, 0.0) || s == complex(1.0, 0.0)) {
    throw pole_error("completed zeta has poles at s=0 and s=1");
  }
  check_height(s);
  const auto split = theta_integrals(s, config_.quadrature_tol);
  const complex a = std::pow(split.w_conj, 0.5 * (1.0 - s)) / (s - 1.0) -
                    std::pow(split.w_conj, -0.5 * s) / s;
  return real_if_real(s, a + split.outer);
}

complex zeta_engine::xi(complex s) const {
  check_height(s);
  const auto split = theta_integrals(s, config_.quadrature_tol);
  // s (s - 1) / 2 times the completed zeta, with both poles cancelled by hand.
  const complex head = 0.5 * (s * std::pow(split.w_conj, 0.5 * (1.0 - s)) -
                              (s - 1.0) * std::pow(split.w_conj, -0.5 * s));
  return real_if_real(s, head + 0.5 * s * (s - 1.0) * split.outer);
}

}  // namespace zetareg
