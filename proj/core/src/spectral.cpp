#include "zetareg/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <sstream>

#include "summation.hpp"
#include "zetareg/errors.hpp"

namespace zetareg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using detail::compensated_sum;

constexpr double energy_tail_tol = 1e-12;
constexpr std::uint64_t max_power_law_terms = 200'000'000;

// Sum over distinct integers m > lambda of m exp(-eps m), bounded by the
// integral from lambda once m exp(-eps m) is decreasing (lambda >= 1/eps).
double integer_tail_bound(double lambda, double eps) {
  if (lambda < 1.0 / eps) return std::numeric_limits<double>::infinity();
  return std::exp(-eps * lambda) * (lambda / eps + 1.0 / (eps * eps));
}

std::string format_double(double x, const char* fmt = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

not_regularizable prime_verdict(const prime_zeta& pz) {
  not_regularizable out;
  out.reason = "prime zeta function admits no continuation to s = 0";

  const long k_max = pz.config().k_max;
  const double r = pz.config().exclusion_radius;
  const auto near_zero =
      make_singularity_catalog(window{0.0, 0.1, 0.0, 0.0}, k_max, zeros_table{}, pz.tables());
  out.accumulating_points = near_zero.entries;
  out.diagnostics.push_back(std::to_string(near_zero.entries.size()) +
                            " singular points 1/k (square-free k <= " + std::to_string(k_max) +
                            ") lie in (0, 0.1] and accumulate at s = 0");
  for (auto it = near_zero.entries.rbegin();
       it != near_zero.entries.rend() && it - near_zero.entries.rbegin() < 8; ++it) {
    out.diagnostics.push_back("singular point s = 1/" + std::to_string(it->k) + " = " +
                              format_double(it->location.real()));
  }

  // Real-axis gaps between consecutive pole images wide enough to hold an
  // admissible point; below some sigma the exclusion disks overlap.
  const auto real_poles =
      make_singularity_catalog(window{0.0, 0.2, 0.0, 0.0}, k_max, zeros_table{}, pz.tables());
  std::vector<double> midpoints;
  for (std::size_t i = real_poles.entries.size(); i-- > 1;) {
    const double hi = real_poles.entries[i].location.real();
    const double lo = real_poles.entries[i - 1].location.real();
    const double mid = 0.5 * (hi + lo);
    if (hi - lo > 3.0 * r && mid <= 0.1) midpoints.push_back(mid);
  }
  if (!midpoints.empty()) {
    out.smallest_admissible_sigma = midpoints.back();
    const std::size_t wanted = std::min<std::size_t>(6, midpoints.size());
    for (std::size_t j = 0; j < wanted; ++j) {
      const std::size_t idx =
          wanted == 1 ? 0 : j * (midpoints.size() - 1) / (wanted - 1);
      const double sigma = midpoints[idx];
      try {
        const auto v = pz.continued(complex(sigma, 0.0));
        out.boundary_samples.push_back({sigma, std::abs(v.value)});
        out.diagnostics.push_back("|P(" + format_double(sigma, "%.6f") +
                                  ")| = " + format_double(std::abs(v.value), "%.6g") +
                                  " between exclusion disks");
      } catch (const error& e) {
        out.diagnostics.push_back("P(" + format_double(sigma, "%.6f") + ") not evaluable: " + e.what());
      }
    }
    out.diagnostics.push_back(
        "below sigma = " + format_double(out.smallest_admissible_sigma, "%.6f") +
        " no real gap between singular points exceeds 3 exclusion radii (" + format_double(r, "%g") + ")");
  }
  out.diagnostics.push_back("P(s) is defined only for 0 < Re(s); zeta_D(0) and zeta_D'(0) do not exist");
  return out;
}

}  // namespace

operator_spectrum operator_spectrum::power_law(int exponent) {
  if (exponent < 1) throw domain_error("power-law exponent must be a positive integer");
  return {power_law_spectrum{exponent}, "power law lambda_n = n^" + std::to_string(exponent)};
}

operator_spectrum operator_spectrum::primes() {
  return {prime_spectrum{}, "primes lambda_n = p_n"};
}

operator_spectrum operator_spectrum::from_eigenvalues(std::vector<double> eigenvalues) {
  if (eigenvalues.empty()) throw domain_error("explicit spectrum is empty");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    if (!(eigenvalues[i] > 0.0) || !std::isfinite(eigenvalues[i])) {
      throw domain_error("eigenvalues must be positive and finite (zero modes are omitted)");
    }
    if (i > 0 && eigenvalues[i] < eigenvalues[i - 1]) {
      throw domain_error("eigenvalues must be in ascending order");
    }
  }
  const auto n = eigenvalues.size();
  return {explicit_spectrum{std::move(eigenvalues)},
          "explicit spectrum with " + std::to_string(n) + " eigenvalues"};
}

std::vector<double> read_eigenvalues(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line.substr(first));
    double v = 0.0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) {
      throw io_error("eigenvalue file line " + std::to_string(line_no) + ": expected one number");
    }
    out.push_back(v);
  }
  return out;
}

operator_spectrum load_explicit_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open eigenvalue file " + path.string());
  auto spectrum = operator_spectrum::from_eigenvalues(read_eigenvalues(in));
  spectrum.description += " from " + path.filename().string();
  return spectrum;
}

complex spectral_zeta(const operator_spectrum& spectrum, complex s, const prime_zeta& pz) {
  return std::visit(
      overloaded{
          [&](const power_law_spectrum& p) {
            return pz.engine().zeta(static_cast<double>(p.exponent) * s);
          },
          [&](const prime_spectrum&) { return pz.continued(s).value; },
          [&](const explicit_spectrum& e) {
            complex sum = 0.0;
            for (double lambda : e.eigenvalues) sum += std::exp(-s * std::log(lambda));
            return sum;
          }},
      spectrum.kind);
}

regularization_verdict regularized_log_det(const operator_spectrum& spectrum, double mu,
                                           const prime_zeta& pz, double tolerance) {
  if (!(mu > 0.0)) throw domain_error("mu must be positive");
  const double log_mu2 = std::log(mu * mu);
  auto finish = [&](complex z0, complex zp0, double err) {
    regularized r;
    r.zeta_at_0 = z0;
    r.zeta_prime_at_0 = zp0;
    r.ln_det = -zp0;
    r.w0 = 0.5 * log_mu2 * z0 + 0.5 * zp0;
    r.mu = mu;
    r.error_estimate = err;
    return r;
  };

  return std::visit(
      overloaded{
          [&](const power_law_spectrum& p) -> regularization_verdict {
            try {
              const auto z0 = pz.engine().evaluate(0.0);
              const auto zp0 = pz.engine().evaluate_derivative(0.0);
              const double pd = static_cast<double>(p.exponent);
              // zeta_D(s) = zeta(p s): zeta_D(0) = zeta(0), zeta_D'(0) = p zeta'(0).
              const double err = z0.error_estimate + pd * zp0.error_estimate;
              if (!(err < tolerance)) {
                not_regularizable nr;
                nr.reason = "zeta_D(0) and zeta_D'(0) could not be resolved to tolerance";
                nr.diagnostics.push_back("error estimate " + format_double(err, "%g"));
                return {nr};
              }
              return {finish(z0.value, pd * zp0.value, err)};
            } catch (const error& e) {
              not_regularizable nr;
              nr.reason = std::string("evaluation failed: ") + e.what();
              return {nr};
            }
          },
          [&](const prime_spectrum&) -> regularization_verdict {
            // Decided by the domain of P(s), not by evaluating at s = 0.
            return {prime_verdict(pz)};
          },
          [&](const explicit_spectrum& e) -> regularization_verdict {
            compensated_sum logs;
            for (double lambda : e.eigenvalues) logs.add(std::log(lambda));
            const double count = static_cast<double>(e.eigenvalues.size());
            return {finish(count, -logs.value(), 0.0)};
          }},
      spectrum.kind);
}

double scaling_check(const operator_spectrum& spectrum, double mu, const prime_zeta& pz) {
  if (!(mu > 0.0)) throw domain_error("mu must be positive");
  const auto verdict = regularized_log_det(spectrum, mu, pz);
  if (!verdict.is_regularized()) {
    throw domain_error("scaling_check: spectrum is not zeta regularizable");
  }
  const auto& r = std::get<regularized>(verdict.status);
  const double log_mu2 = std::log(mu * mu);
  const complex rhs = 0.5 * log_mu2 * r.zeta_at_0 + 0.5 * r.zeta_prime_at_0;

  complex lhs = std::visit(
      overloaded{
          [&](const power_law_spectrum& p) -> complex {
            // zeta of the rescaled spectrum is mu^{2s} zeta(p s); differentiate
            // it numerically at 0 rather than by the product rule.
            const auto& engine = pz.engine();
            const double h = engine.config().derivative_step;
            const double pd = static_cast<double>(p.exponent);
            auto g = [&](double s) { return std::exp(s * log_mu2) * engine.zeta(complex(pd * s, 0.0)); };
            const complex d1 = (g(h) - g(-h)) / (2.0 * h);
            const complex d2 = (g(0.5 * h) - g(-0.5 * h)) / h;
            return 0.5 * (4.0 * d2 - d1) / 3.0;
          },
          [&](const prime_spectrum&) -> complex {
            throw domain_error("scaling_check: prime spectrum is not zeta regularizable");
          },
          [&](const explicit_spectrum& e) -> complex {
            // d/ds sum (lambda / mu^2)^{-s} at 0 = -sum ln(lambda / mu^2).
            compensated_sum logs;
            for (double lambda : e.eigenvalues) logs.add(std::log(lambda / (mu * mu)));
            return -0.5 * logs.value();
          }},
      spectrum.kind);
  return std::abs(lhs - rhs);
}

double cutoff_energy(const operator_spectrum& spectrum, double epsilon, const number_tables& tables) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw domain_error("cutoff epsilon must be positive");
  return std::visit(
      overloaded{
          [&](const power_law_spectrum& p) {
            compensated_sum sum;
            for (std::uint64_t n = 1;; ++n) {
              const double lambda = std::pow(static_cast<double>(n), p.exponent);
              sum.add(lambda * std::exp(-epsilon * lambda));
              if (integer_tail_bound(lambda, epsilon) < energy_tail_tol) break;
              if (n >= max_power_law_terms) {
                throw accuracy_error("cutoff_energy: epsilon too small for the term budget");
              }
            }
            return sum.value();
          },
          [&](const prime_spectrum&) {
            compensated_sum sum;
            for (std::uint32_t prime : tables.primes()) {
              const double lambda = prime;
              sum.add(lambda * std::exp(-epsilon * lambda));
              if (integer_tail_bound(lambda, epsilon) < energy_tail_tol) return sum.value();
            }
            throw accuracy_error("cutoff_energy: sieve limit " + std::to_string(tables.limit()) +
                                 " too small for epsilon = " + format_double(epsilon, "%g"));
          },
          [&](const explicit_spectrum& e) {
            compensated_sum sum;
            for (double lambda : e.eigenvalues) sum.add(lambda * std::exp(-epsilon * lambda));
            return sum.value();
          }},
      spectrum.kind);
}

std::vector<double> log_spaced(double eps_min, double eps_max, int points) {
  if (!(eps_min > 0.0) || !(eps_max > eps_min) || points < 2) {
    throw domain_error("log_spaced needs 0 < eps_min < eps_max and at least 2 points");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  const double a = std::log(eps_min);
  const double b = std::log(eps_max);
  for (int i = 0; i < points; ++i) {
    out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (points - 1));
  }
  out.front() = eps_min;
  out.back() = eps_max;
  return out;
}

namespace {

struct basis_term {
  const char* label;
  double (*eval)(double);
};

constexpr basis_term laurent_basis[] = {
    {"eps^-2", [](double e) { return 1.0 / (e * e); }},
    {"eps^-1", [](double e) { return 1.0 / e; }},
    {"eps^0", [](double) { return 1.0; }},
    {"eps^1", [](double e) { return e; }},
    {"eps^2", [](double e) { return e * e; }},
};
constexpr basis_term log_basis[] = {
    {"eps^-2/log(1/eps)", [](double e) { return 1.0 / (e * e * std::log(1.0 / e)); }},
    {"log(1/eps)", [](double e) { return std::log(1.0 / e); }},
};
constexpr std::size_t constant_column = 2;

std::vector<double> least_squares(const std::vector<basis_term>& basis, std::span<const double> eps,
                                  std::span<const double> energy, double* rms) {
  const auto n = static_cast<Eigen::Index>(eps.size());
  const auto m = static_cast<Eigen::Index>(basis.size());
  if (n <= m) throw conditioning_error("cutoff fit needs more points than basis functions");
  Eigen::MatrixXd a(n, m);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) a(i, j) = basis[static_cast<std::size_t>(j)].eval(eps[i]);
    y(i) = energy[static_cast<std::size_t>(i)];
  }
  Eigen::VectorXd scale(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    scale(j) = a.col(j).norm();
    if (!(scale(j) > 0.0) || !std::isfinite(scale(j))) throw conditioning_error("degenerate basis column");
    a.col(j) /= scale(j);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-13);
  if (qr.rank() < m) throw conditioning_error("cutoff fit matrix is rank deficient");
  const Eigen::VectorXd x = qr.solve(y);
  if (rms) *rms = std::sqrt((a * x - y).squaredNorm() / static_cast<double>(n));
  std::vector<double> coeffs(static_cast<std::size_t>(m));
  for (Eigen::Index j = 0; j < m; ++j) coeffs[static_cast<std::size_t>(j)] = x(j) / scale(j);
  return coeffs;
}

}  // namespace

cutoff_fit fit_cutoff(const operator_spectrum& spectrum, std::vector<double> eps_grid, bool with_log,
                      const number_tables& tables) {
  if (eps_grid.size() < 8) throw domain_error("cutoff fit needs at least 8 grid points");
  std::sort(eps_grid.begin(), eps_grid.end());
  if (!(eps_grid.front() > 0.0)) throw domain_error("cutoff grid must be positive");
  if (eps_grid.back() < 10.0 * eps_grid.front()) {
    throw domain_error("cutoff grid must span at least one decade");
  }
  if (with_log && !(eps_grid.back() < 1.0)) {
    throw domain_error("logarithmic basis terms need eps < 1");
  }

  std::vector<basis_term> basis(std::begin(laurent_basis), std::end(laurent_basis));
  if (with_log) basis.insert(basis.end(), std::begin(log_basis), std::end(log_basis));

  cutoff_fit out;
  out.epsilons = eps_grid;
  out.energies.reserve(eps_grid.size());
  for (double e : eps_grid) out.energies.push_back(cutoff_energy(spectrum, e, tables));
  for (const auto& b : basis) out.basis.emplace_back(b.label);

  out.coefficients = least_squares(basis, out.epsilons, out.energies, &out.residual);
  out.finite_part = out.coefficients[constant_column];

  // Half windows hold at least basis + 1 points and overlap when the grid is short.
  const std::size_t n = eps_grid.size();
  const std::size_t half = std::max<std::size_t>((n + 1) / 2, basis.size() + 1);
  if (half > n) throw conditioning_error("too few grid points for the stability windows");
  const std::span<const double> e_all(out.epsilons);
  const std::span<const double> y_all(out.energies);
  const auto lower = least_squares(basis, e_all.first(half), y_all.first(half), nullptr);
  const auto upper = least_squares(basis, e_all.last(half), y_all.last(half), nullptr);
  out.stability = std::abs(lower[constant_column] - upper[constant_column]);
  return out;
}

}  // namespace zetareg
