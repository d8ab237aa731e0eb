#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "zetareg/numtheory.hpp"
#include "zetareg/primezeta.hpp"

namespace zetareg {

/// lambda_n = n^exponent, n >= 1.
struct power_law_spectrum {
  int exponent = 1;
};

/// lambda_n = n-th prime.
struct prime_spectrum {};

/// Finite list 0 < lambda_1 <= lambda_2 <= ...
struct explicit_spectrum {
  std::vector<double> eigenvalues;
};

struct operator_spectrum {
  std::variant<power_law_spectrum, prime_spectrum, explicit_spectrum> kind;
  std::string description;

  static operator_spectrum power_law(int exponent);
  static operator_spectrum primes();
  /// Throws domain_error unless the list is non-empty, positive and ascending.
  static operator_spectrum from_eigenvalues(std::vector<double> eigenvalues);

  bool is_primes() const noexcept { return std::holds_alternative<prime_spectrum>(kind); }
};

/// Text format: one positive eigenvalue per line, '#' comment lines.
std::vector<double> read_eigenvalues(std::istream& in);
operator_spectrum load_explicit_spectrum(const std::filesystem::path& path);

struct regularized {
  complex zeta_at_0;
  complex zeta_prime_at_0;
  complex ln_det;  // -zeta_D'(0)
  complex w0;      // (1/2) ln(mu^2) zeta_D(0) + (1/2) zeta_D'(0)
  double mu = 1.0;
  double error_estimate = 0.0;
};

struct not_regularizable {
  std::string reason;
  std::vector<std::string> diagnostics;
  std::vector<singular_point> accumulating_points;  // pole images in (0, 0.1]
  struct sample {
    double sigma;
    double abs_p;
  };
  std::vector<sample> boundary_samples;  // |P(sigma)| between exclusion disks
  double smallest_admissible_sigma = 0.0;
};

struct regularization_verdict {
  std::variant<regularized, not_regularizable> status;

  bool is_regularized() const noexcept { return std::holds_alternative<regularized>(status); }
};

/// zeta_D(s) = sum_n lambda_n^{-s}, continued where the spectrum allows.
complex spectral_zeta(const operator_spectrum& spectrum, complex s, const prime_zeta& pz);

/// Zeta-regularized log-determinant and W[0]. Never throws for a valid
/// spectrum: a spectrum whose zeta function cannot be continued to s = 0
/// yields not_regularizable with the evidence attached.
regularization_verdict regularized_log_det(const operator_spectrum& spectrum, double mu,
                                           const prime_zeta& pz, double tolerance = 1e-7);

/// |(1/2) d/ds zeta_{mu^-2 D}(0) - [(1/2) ln(mu^2) zeta_D(0) + (1/2) zeta_D'(0)]|,
/// the left side computed on the rescaled spectrum. Throws domain_error for
/// spectra that are not regularizable.
double scaling_check(const operator_spectrum& spectrum, double mu, const prime_zeta& pz);

/// E(eps) = sum_n lambda_n exp(-eps lambda_n), summed until the tail bound
/// drops below 1e-12.
double cutoff_energy(const operator_spectrum& spectrum, double epsilon, const number_tables& tables);

struct cutoff_fit {
  std::vector<double> epsilons;
  std::vector<double> energies;
  std::vector<std::string> basis;
  std::vector<double> coefficients;
  double finite_part = 0.0;  // coefficient of eps^0
  double stability = 0.0;    // |finite part (lower window) - finite part (upper window)|
  double residual = 0.0;     // RMS of the full-window fit residuals
};

/// Least-squares fit of E(eps) on {eps^-2, eps^-1, 1, eps, eps^2}, plus
/// eps^-2 / ln(1/eps) and ln(1/eps) when with_log is set.
cutoff_fit fit_cutoff(const operator_spectrum& spectrum, std::vector<double> eps_grid,
                      bool with_log, const number_tables& tables);

/// `points` log-spaced values from eps_min to eps_max inclusive.
std::vector<double> log_spaced(double eps_min, double eps_max, int points);

}  // namespace zetareg
