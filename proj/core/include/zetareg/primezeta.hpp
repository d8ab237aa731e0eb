#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "zetareg/errors.hpp"
#include "zetareg/numtheory.hpp"
#include "zetareg/zeros.hpp"
#include "zetareg/zeta.hpp"

namespace zetareg {

struct prime_zeta_config {
  double tolerance = 1e-10;        // target for the dropped k-tail
  double direct_margin = 0.1;      // direct prime sum needs Re(s) >= 1 + margin
  long k_max = 1000;               // singular points 1/k, rho/k checked up to this k
  double exclusion_radius = 1e-3;  // evaluation inside these disks is refused
  double branch_margin = 0.1;      // flag k when |arg zeta(ks)| > pi - margin

  void validate() const;
};

/// P(s) with the bookkeeping of its Moebius-inversion evaluation.
struct prime_zeta_value {
  complex value;
  long k_used = 1;
  double error_estimate = 0.0;
  std::vector<long> branch_flags;  // k with zeta(ks) near the negative real axis
};

struct window {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  bool contains(complex s) const noexcept {
    return s.real() >= re_min && s.real() <= re_max && s.imag() >= im_min && s.imag() <= im_max;
  }
};

struct singular_point {
  complex location;
  singularity_kind kind;
  long k;
  std::optional<std::size_t> zero_index;  // into the zeros table, zero images only
};

struct singularity_catalog {
  std::vector<singular_point> entries;  // sorted by Re, then Im
  window bounds;
  long k_max = 0;
  std::size_t zeros_used = 0;
};

/// Truncation order K = ceil(ln(1/tol) / (sigma ln 2)) + 8.
long truncation_order(double sigma, double tol);

/// Prime zeta function: direct prime sums for Re(s) > 1 and the Moebius
/// inversion P(s) = sum_k mu(k)/k ln zeta(ks) for 0 < Re(s).
///
/// Holds a reference to `tables`, which must outlive this object.
class prime_zeta {
 public:
  prime_zeta(const number_tables& tables, zeros_table zeros, prime_zeta_config config = {},
             zeta_engine engine = zeta_engine{});

  const prime_zeta_config& config() const noexcept { return config_; }
  const zeta_engine& engine() const noexcept { return engine_; }
  const number_tables& tables() const noexcept { return *tables_; }
  const zeros_table& zeros() const noexcept { return zeros_; }

  /// Sum of p^{-s} over the sieve primes. Throws accuracy_error when the
  /// estimated tail beyond the sieve exceeds tol.
  complex direct(complex s, double tol) const;
  /// -sum ln p p^{-s} over the sieve primes, with the same tail policy.
  complex direct_derivative(complex s, double tol) const;
  /// Estimated size of the prime sum beyond the sieve limit.
  double direct_tail_estimate(double sigma) const;
  double direct_derivative_tail_estimate(double sigma) const;

  prime_zeta_value continued(complex s) const;
  /// Same sum truncated at an explicit order instead of the policy value.
  prime_zeta_value continued_with_order(complex s, long order) const;
  prime_zeta_value derivative(complex s) const;

  /// |ln zeta(s) - sum_{r<=r_max} P(rs)/r|. Each P(rs) is the direct prime
  /// sum when its sieve tail is negligible, else the Moebius value.
  double ln_zeta_expansion_check(complex s, int r_max) const;

  /// Throws singularity_error if s is inside an exclusion disk, and
  /// no_continuation_error / accuracy_error for the domain limits.
  void check_admissible(complex s) const;

 private:
  complex log_zeta(complex s, bool* near_branch_cut) const;
  prime_zeta_value mobius_sum(complex s, long order) const;

  const number_tables* tables_;
  zeros_table zeros_;
  prime_zeta_config config_;
  zeta_engine engine_;
};

/// All pole images 1/k and zero images (1/2 +- i t_j)/k with mu(k) != 0,
/// k <= k_max, inside the (closed) window. Requires re_min >= 0.
singularity_catalog make_singularity_catalog(const window& bounds, long k_max,
                                             const zeros_table& zeros,
                                             const number_tables& tables);

enum class scan_flag { ok, branch, singular, out_of_range };

std::string_view to_string(scan_flag f);

struct scan_point {
  double sigma;
  double tau;
  std::optional<complex> value;
  scan_flag flag;
};

/// Evaluates P on an nx-by-ny grid over the window, sigma-major order.
/// Per-point failures become flags. Requires re_min > 0.
std::vector<scan_point> strip_scan(const prime_zeta& pz, const window& bounds, int nx, int ny,
                                   unsigned threads = 0);

}  // namespace zetareg
