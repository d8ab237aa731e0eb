#pragma once

#include <complex>
#include <string_view>

#include "zetareg/numtheory.hpp"

namespace zetareg {

using complex = std::complex<double>;

struct zeta_config {
  double series_cutoff_re = 2.0;      // Dirichlet series used at and above this Re(s)
  double quadrature_tol = 1e-12;      // relative tolerance of the theta integral
  double theta_truncation_tol = 1e-16;
  double im_domain_limit = 60.0;      // |Im s| beyond this is refused
  double derivative_step = 1e-5;

  /// Throws domain_error when a field violates its invariant.
  void validate() const;
};

enum class zeta_method { dirichlet_series, theta_continuation };

std::string_view to_string(zeta_method m);

struct zeta_result {
  complex value;
  double error_estimate;
  zeta_method method;
};

/// Riemann zeta evaluator. Immutable after construction; all members are
/// pure, so one engine may be shared across threads.
class zeta_engine {
 public:
  explicit zeta_engine(zeta_config config = {});

  const zeta_config& config() const noexcept { return config_; }

  /// Dirichlet series with Euler-Maclaurin tail. Requires Re(s) >= cutoff.
  complex zeta_dirichlet(complex s, double tol = 1e-14) const;

  /// Truncated Euler product over the sieve primes. Requires Re(s) >= cutoff.
  complex euler_product(complex s, const number_tables& tables) const;

  /// Theta-integral continuation; valid for s != 1 and |Im s| <= limit.
  complex zeta_continued(complex s) const;

  /// Dispatches to the series or the continuation on Re(s).
  complex zeta(complex s) const { return evaluate(s).value; }
  zeta_result evaluate(complex s) const;

  /// zeta(s) - 1, accurate when zeta(s) is close to 1.
  complex zeta_minus_one(complex s) const;

  complex zeta_derivative(complex s) const { return evaluate_derivative(s).value; }
  /// zeta'(s): differentiated series above the cutoff, otherwise a central
  /// difference of the continuation with one Richardson step.
  zeta_result evaluate_derivative(complex s) const;

  /// Completed zeta pi^(-s/2) Gamma(s/2) zeta(s); poles at 0 and 1.
  complex completed(complex s) const;

  /// xi(s) = pi^(-s/2) Gamma(s/2 + 1) (s - 1) zeta(s); entire.
  complex xi(complex s) const;

 private:
  struct theta_split {
    complex outer;          // both ray integrals
    complex w_conj;         // e^{-i theta}
    double error_estimate;  // absolute, on `outer`
  };

  void check_height(complex s) const;
  theta_split theta_integrals(complex s, double rel_tol) const;
  complex zeta_continued_impl(complex s, double rel_tol, double* error) const;
  complex dirichlet_impl(complex s, double tol, bool minus_one, double* error) const;
  complex dirichlet_derivative(complex s, double tol) const;

  zeta_config config_;
};

}  // namespace zetareg
