#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace zetareg {

inline constexpr std::uint64_t default_sieve_cap = 100'000'000;

/// Primes and Moebius values up to `limit`, produced by one sieve pass.
///
/// Immutable after construction; safe to share between threads.
class number_tables {
 public:
  /// Sieves [1, limit]. Throws range_error unless 2 <= limit <= cap.
  explicit number_tables(std::uint64_t limit, std::uint64_t cap = default_sieve_cap);

  std::uint64_t limit() const noexcept { return limit_; }
  std::span<const std::uint32_t> primes() const noexcept { return primes_; }

  /// mu(n) for 1 <= n <= limit.
  int moebius(std::uint64_t n) const;
  bool is_square_free(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  /// pi(x): number of primes <= floor(x). Requires 2 <= x <= limit.
  std::uint64_t prime_count(double x) const;

 private:
  void check_index(std::uint64_t n) const;

  std::uint64_t limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<std::int8_t> moebius_;  // index 0 unused
};

inline number_tables build_tables(std::uint64_t limit, std::uint64_t cap = default_sieve_cap) {
  return number_tables(limit, cap);
}

/// Li(x) = integral from 2 to x of dt / ln t (offset convention).
double log_integral(double x);

struct pnt_row {
  double x;
  std::uint64_t prime_count;
  double x_over_log_x;
  double log_integral;
};

/// Prime-number-theorem diagnostic rows, one per x, in input order.
std::vector<pnt_row> pnt_table(std::span<const double> x_values, const number_tables& tables);

}  // namespace zetareg
