#include "zetareg/primezeta.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <thread>

#include "summation.hpp"

namespace zetareg {

namespace {

using detail::compensated_complex_sum;

constexpr double pi = std::numbers::pi;

complex log1p_complex(complex z) {
  if (std::abs(z) >= 0.5) return std::log(1.0 + z);
  const double x = z.real();
  const double y = z.imag();
  return {0.5 * std::log1p(2.0 * x + x * x + y * y), std::atan2(y, 1.0 + x)};
}

std::string format_point(complex s) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", s.real(), s.imag());
  return buf;
}

}  // namespace

void prime_zeta_config::validate() const {
  if (!(tolerance > 0.0) || !(direct_margin > 0.0) || k_max < 1 || !(exclusion_radius > 0.0) ||
      !(branch_margin > 0.0)) {
    throw domain_error("prime zeta configuration values must be positive");
  }
}

long truncation_order(double sigma, double tol) {
  if (!(sigma > 0.0) || !(tol > 0.0) || tol >= 1.0) {
    throw domain_error("truncation_order needs sigma > 0 and 0 < tol < 1");
  }
  return static_cast<long>(std::ceil(std::log(1.0 / tol) / (sigma * std::log(2.0)))) + 8;
}

prime_zeta::prime_zeta(const number_tables& tables, zeros_table zeros, prime_zeta_config config,
                       zeta_engine engine)
    : tables_(&tables), zeros_(std::move(zeros)), config_(config), engine_(std::move(engine)) {
  config_.validate();
}

double prime_zeta::direct_tail_estimate(double sigma) const {
  const double n = static_cast<double>(tables_->limit());
  return std::pow(n, 1.0 - sigma) / ((sigma - 1.0) * std::log(n));
}

double prime_zeta::direct_derivative_tail_estimate(double sigma) const {
  const double n = static_cast<double>(tables_->limit());
  return std::pow(n, 1.0 - sigma) / (sigma - 1.0);
}

complex prime_zeta::direct(complex s, double tol) const {
  if (s.real() < 1.0 + config_.direct_margin) {
    throw domain_error("prime_zeta_direct requires Re(s) >= " +
                       std::to_string(1.0 + config_.direct_margin));
  }
  if (direct_tail_estimate(s.real()) > tol) {
    throw accuracy_error("prime sum tail beyond the sieve limit exceeds the tolerance at Re(s) = " +
                         std::to_string(s.real()));
  }
  compensated_complex_sum sum;
  for (std::uint32_t p : tables_->primes()) {
    const complex term = std::exp(-s * std::log(static_cast<double>(p)));
    if (std::abs(term) < 1e-22 * std::abs(sum.value())) break;
    sum.add(term);
  }
  return s.imag() == 0.0 ? complex(sum.value().real(), 0.0) : sum.value();
}

complex prime_zeta::direct_derivative(complex s, double tol) const {
  if (s.real() < 1.0 + config_.direct_margin) {
    throw domain_error("direct prime-sum derivative requires Re(s) >= " +
                       std::to_string(1.0 + config_.direct_margin));
  }
  if (direct_derivative_tail_estimate(s.real()) > tol) {
    throw accuracy_error("derivative prime sum tail exceeds the tolerance");
  }
  compensated_complex_sum sum;
  for (std::uint32_t p : tables_->primes()) {
    const double lp = std::log(static_cast<double>(p));
    const complex term = lp * std::exp(-s * lp);
    if (std::abs(term) < 1e-22 * std::abs(sum.value())) break;
    sum.add(-term);
  }
  return s.imag() == 0.0 ? complex(sum.value().real(), 0.0) : sum.value();
}

void prime_zeta::check_admissible(complex s) const {
  const double sigma = s.real();
  if (!(sigma > 0.0)) {
    throw no_continuation_error(
        "prime zeta function: no continuation to Re(s) <= 0; the singular points 1/k and "
        "rho/k accumulate on Re(s) = 0, so a prime-number spectrum is not zeta regularizable");
  }
  // Terms with Re(ks) below the series cutoff go through the theta integral,
  // whose height limit then caps k |Im s|.
  const double cutoff = engine_.config().series_cutoff_re;
  if (sigma < cutoff) {
    const double k_cont = std::ceil(cutoff / sigma) - 1.0;
    if (k_cont * std::abs(s.imag()) > engine_.config().im_domain_limit) {
      throw accuracy_error("|Im s| * (" + std::to_string(cutoff) + "/Re s) exceeds the zeta height limit");
    }
  }
  const double r = config_.exclusion_radius;
  const auto k_top = std::min<long>(config_.k_max, static_cast<long>(tables_->limit()));
  for (long k = 1; k <= k_top; ++k) {
    if (tables_->moebius(static_cast<std::uint64_t>(k)) == 0) continue;
    const double inv = 1.0 / static_cast<double>(k);
    const complex pole(inv, 0.0);
    if (std::abs(s - pole) < r) {
      throw singularity_error("s = " + format_point(s) + " lies within " + std::to_string(r) +
                                  " of the singular point 1/" + std::to_string(k),
                              pole, singularity_kind::pole_image, k);
    }
    const double re_img = 0.5 * inv;
    if (std::abs(sigma - re_img) >= r) continue;
    for (std::size_t j = 0; j < zeros_.ordinates.size(); ++j) {
      for (double sign : {1.0, -1.0}) {
        const complex img(re_img, sign * zeros_.ordinates[j] * inv);
        if (std::abs(s - img) < r) {
          throw singularity_error("s = " + format_point(s) + " lies within " + std::to_string(r) +
                                      " of the singular point rho_" + std::to_string(j + 1) +
                                      "/" + std::to_string(k) + " = " + format_point(img),
                                  img, singularity_kind::zero_image, k, j);
        }
      }
    }
  }
}

complex prime_zeta::log_zeta(complex s, bool* near_branch_cut) const {
  if (s.real() >= engine_.config().series_cutoff_re) {
    *near_branch_cut = false;
    return log1p_complex(engine_.zeta_minus_one(s));
  }
  const complex z = engine_.zeta(s);
  *near_branch_cut = std::abs(std::arg(z)) > pi - config_.branch_margin;
  return std::log(z);
}

prime_zeta_value prime_zeta::mobius_sum(complex s, long order) const {
  if (static_cast<std::uint64_t>(order) > tables_->limit()) {
    throw range_error("truncation order " + std::to_string(order) + " exceeds the sieve limit");
  }
  prime_zeta_value out;
  out.k_used = order;
  complex sum = 0.0;
  for (long k = 1; k <= order; ++k) {
    const int mu = tables_->moebius(static_cast<std::uint64_t>(k));
    if (mu == 0) continue;
    bool flagged = false;
    const complex lz = log_zeta(static_cast<double>(k) * s, &flagged);
    if (flagged) out.branch_flags.push_back(k);
    sum += (static_cast<double>(mu) / static_cast<double>(k)) * lz;
  }
  const double sigma = s.real();
  const double k1 = static_cast<double>(order + 1);
  out.error_estimate =
      std::pow(2.0, -k1 * sigma + 1.0) / (k1 * (1.0 - std::pow(2.0, -sigma)));
  out.value = sum;
  return out;
}

prime_zeta_value prime_zeta::continued(complex s) const {
  check_admissible(s);
  return mobius_sum(s, truncation_order(s.real(), config_.tolerance));
}

prime_zeta_value prime_zeta::continued_with_order(complex s, long order) const {
  if (order < 1) throw domain_error("truncation order must be positive");
  check_admissible(s);
  return mobius_sum(s, order);
}

prime_zeta_value prime_zeta::derivative(complex s) const {
  check_admissible(s);
  const double sigma = s.real();
  const long order = truncation_order(sigma, config_.tolerance);
  if (static_cast<std::uint64_t>(order) > tables_->limit()) {
    throw range_error("truncation order exceeds the sieve limit");
  }
  const double cutoff = engine_.config().series_cutoff_re;
  prime_zeta_value out;
  out.k_used = order;
  complex sum = 0.0;
  for (long k = 1; k <= order; ++k) {
    const int mu = tables_->moebius(static_cast<std::uint64_t>(k));
    if (mu == 0) continue;
    const complex ks = static_cast<double>(k) * s;
    const complex z = engine_.zeta(ks);
    if (ks.real() < cutoff && std::abs(std::arg(z)) > pi - config_.branch_margin) {
      out.branch_flags.push_back(k);
    }
    sum += static_cast<double>(mu) * engine_.zeta_derivative(ks) / z;
  }
  const double k1 = static_cast<double>(order + 1);
  out.error_estimate = std::log(2.0) * std::pow(2.0, -k1 * sigma) / (1.0 - std::pow(2.0, -sigma));
  out.value = sum;
  return out;
}

double prime_zeta::ln_zeta_expansion_check(complex s, int r_max) const {
  if (s.real() < 1.1) throw domain_error("ln_zeta_expansion_check requires Re(s) >= 1.1");
  if (r_max < 1) throw domain_error("r_max must be positive");
  constexpr double negligible_tail = 1e-15;
  const complex lhs = log1p_complex(engine_.zeta_minus_one(s));
  complex rhs = 0.0;
  for (int r = 1; r <= r_max; ++r) {
    const complex rs = static_cast<double>(r) * s;
    const bool use_direct = rs.real() >= 1.0 + config_.direct_margin &&
                            direct_tail_estimate(rs.real()) < negligible_tail;
    const complex p = use_direct ? direct(rs, negligible_tail) : continued(rs).value;
    rhs += p / static_cast<double>(r);
  }
  return std::abs(lhs - rhs);
}

singularity_catalog make_singularity_catalog(const window& bounds, long k_max,
                                             const zeros_table& zeros,
                                             const number_tables& tables) {
  if (!(bounds.re_min >= 0.0) || bounds.re_max < bounds.re_min || bounds.im_max < bounds.im_min) {
    throw domain_error("singularity window must satisfy 0 <= re_min <= re_max, im_min <= im_max");
  }
  if (k_max < 1 || static_cast<std::uint64_t>(k_max) > tables.limit()) {
    throw range_error("k_max must lie in [1, sieve limit]");
  }
  singularity_catalog out;
  out.bounds = bounds;
  out.k_max = k_max;
  out.zeros_used = zeros.ordinates.size();
  for (long k = 1; k <= k_max; ++k) {
    if (tables.moebius(static_cast<std::uint64_t>(k)) == 0) continue;
    const double inv = 1.0 / static_cast<double>(k);
    const complex pole(inv, 0.0);
    if (bounds.contains(pole)) {
      out.entries.push_back({pole, singularity_kind::pole_image, k, std::nullopt});
    }
    if (0.5 * inv < bounds.re_min || 0.5 * inv > bounds.re_max) continue;
    for (std::size_t j = 0; j < zeros.ordinates.size(); ++j) {
      for (double sign : {1.0, -1.0}) {
        const complex img(0.5 * inv, sign * zeros.ordinates[j] * inv);
        if (bounds.contains(img)) {
          out.entries.push_back({img, singularity_kind::zero_image, k, j});
        }
      }
    }
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const singular_point& a, const singular_point& b) {
              if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
              return a.location.imag() < b.location.imag();
            });
  return out;
}

std::string_view to_string(scan_flag f) {
  switch (f) {
    case scan_flag::ok: return "ok";
    case scan_flag::branch: return "branch";
    case scan_flag::singular: return "singular";
    case scan_flag::out_of_range: return "out_of_range";
  }
  return "unknown";
}

std::vector<scan_point> strip_scan(const prime_zeta& pz, const window& bounds, int nx, int ny,
                                   unsigned threads) {
  if (!(bounds.re_min > 0.0)) {
    throw no_continuation_error("strip_scan: the prime zeta function has no continuation to Re(s) <= 0");
  }
  if (nx < 1 || ny < 1) throw domain_error("strip_scan needs nx, ny >= 1");
  if (bounds.re_max < bounds.re_min || bounds.im_max < bounds.im_min) {
    throw domain_error("strip_scan: empty window");
  }
  auto axis = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  std::vector<scan_point> out(total);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) {
      auto& p = out[static_cast<std::size_t>(i) * static_cast<std::size_t>(ny) + static_cast<std::size_t>(j)];
      p.sigma = axis(bounds.re_min, bounds.re_max, nx, i);
      p.tau = axis(bounds.im_min, bounds.im_max, ny, j);
      p.flag = scan_flag::ok;
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      auto& p = out[idx];
      try {
        const auto v = pz.continued(complex(p.sigma, p.tau));
        p.value = v.value;
        p.flag = v.branch_flags.empty() ? scan_flag::ok : scan_flag::branch;
      } catch (const singularity_error&) {
        p.flag = scan_flag::singular;
      } catch (const error&) {
        p.flag = scan_flag::out_of_range;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();  // join before handing out the results
  return out;
}

}  // namespace zetareg
