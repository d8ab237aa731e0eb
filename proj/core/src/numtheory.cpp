#include "zetareg/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zetareg/errors.hpp"
#include "zetareg/quadrature.hpp"

namespace zetareg {

number_tables::number_tables(std::uint64_t limit, std::uint64_t cap) : limit_(limit) {
  if (limit < 2 || limit > cap) {
    throw range_error("sieve limit " + std::to_string(limit) + " outside [2, " +
                      std::to_string(cap) + "]");
  }
  // mu starts at +1 everywhere; each prime flips the sign of its multiples
  // and zeroes the multiples of its square. Composite flags ride along.
  moebius_.assign(limit + 1, 1);
  std::vector<bool> composite(limit + 1, false);
  primes_.reserve(static_cast<std::size_t>(1.3 * limit / std::log(static_cast<double>(limit))) + 16);
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    primes_.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p; m <= limit; m += p) {
      if (m > p) composite[m] = true;
      moebius_[m] = static_cast<std::int8_t>(-moebius_[m]);
    }
    if (p <= limit / p) {
      const std::uint64_t sq = p * p;
      for (std::uint64_t m = sq; m <= limit; m += sq) moebius_[m] = 0;
    }
  }
  moebius_[0] = 0;
}

void number_tables::check_index(std::uint64_t n) const {
  if (n < 1 || n > limit_) {
    throw range_error("index " + std::to_string(n) + " outside [1, " + std::to_string(limit_) +
                      "]");
  }
}

int number_tables::moebius(std::uint64_t n) const {
  check_index(n);
  return moebius_[n];
}

bool number_tables::is_square_free(std::uint64_t n) const { return moebius(n) != 0; }

bool number_tables::is_prime(std::uint64_t n) const {
  check_index(n);
  return std::binary_search(primes_.begin(), primes_.end(), static_cast<std::uint32_t>(n));
}

std::uint64_t number_tables::prime_count(double x) const {
  if (!(x >= 2.0) || x > static_cast<double>(limit_)) {
    throw range_error("prime_count argument outside [2, " + std::to_string(limit_) + "]");
  }
  const auto n = static_cast<std::uint32_t>(std::floor(x));
  return static_cast<std::uint64_t>(std::upper_bound(primes_.begin(), primes_.end(), n) -
                                    primes_.begin());
}

double log_integral(double x) {
  if (!(x > 2.0) || !std::isfinite(x)) throw domain_error("log_integral requires x > 2");
  // Substituting t = e^u gives the smoother integrand e^u / u on [ln 2, ln x].
  const double lo = std::log(2.0);
  const double hi = std::log(x);
  auto r = quadrature::integrate([](double u) { return std::exp(u) / u; }, lo, hi, 1e-11, 1e-15);
  if (!r.converged && r.error > 1e-9) throw accuracy_error("log_integral quadrature did not converge");
  return r.value;
}

std::vector<pnt_row> pnt_table(std::span<const double> x_values, const number_tables& tables) {
  std::vector<pnt_row> rows;
  rows.reserve(x_values.size());
  for (double x : x_values) {
    const auto count = tables.prime_count(x);
    rows.push_back({x, count, x / std::log(x), log_integral(x)});
  }
  return rows;
}

}  // namespace zetareg
