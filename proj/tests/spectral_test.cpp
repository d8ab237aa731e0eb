#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/spectral.hpp"

using namespace zetareg;

namespace {

const number_tables& tables() {
  static const number_tables t(1'000'000);
  return t;
}

const prime_zeta& pz() {
  static const prime_zeta p(tables(), find_zeros(zeta_engine{}, 0.0, 60.0));
  return p;
}

const regularized& as_regularized(const regularization_verdict& v) {
  EXPECT_TRUE(v.is_regularized());
  return std::get<regularized>(v.status);
}

const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

TEST(Spectrum, Construction) {
  EXPECT_THROW(static_cast<void>(operator_spectrum::power_law(0)), domain_error);
  EXPECT_THROW(static_cast<void>(operator_spectrum::from_eigenvalues({})), domain_error);
  EXPECT_THROW(static_cast<void>(operator_spectrum::from_eigenvalues({0.0, 1.0})), domain_error);
  EXPECT_THROW(static_cast<void>(operator_spectrum::from_eigenvalues({2.0, 1.0})), domain_error);
  EXPECT_TRUE(operator_spectrum::primes().is_primes());
}

TEST(Spectrum, ReadEigenvalues) {
  std::istringstream in("# modes\n1.5\n\n  2\n3e1\n");
  EXPECT_EQ(read_eigenvalues(in), (std::vector<double>{1.5, 2.0, 30.0}));
  std::istringstream bad("1.5 2\n");
  EXPECT_THROW(static_cast<void>(read_eigenvalues(bad)), io_error);
  EXPECT_THROW(static_cast<void>(load_explicit_spectrum("/nonexistent/eigs.txt")), io_error);
}

TEST(SpectralZeta, Examples) {
  EXPECT_NEAR(spectral_zeta(operator_spectrum::power_law(1), 2.0, pz()).real(),
              std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
  EXPECT_NEAR(spectral_zeta(operator_spectrum::from_eigenvalues({1, 2, 3}), 1.0, pz()).real(), 11.0 / 6.0,
              1e-15);
  EXPECT_NEAR(spectral_zeta(operator_spectrum::primes(), 2.0, pz()).real(), 0.452247420041065499, 1e-12);
  // zeta(2 s) at s = 1/2 is the pole.
  EXPECT_THROW(static_cast<void>(spectral_zeta(operator_spectrum::power_law(2), 0.5, pz())), pole_error);
  EXPECT_THROW(static_cast<void>(spectral_zeta(operator_spectrum::primes(), 0.0, pz())),
               no_continuation_error);
}

TEST(LogDet, IntegerSpectrum) {
  const auto& r = as_regularized(regularized_log_det(operator_spectrum::power_law(1), 1.0, pz()));
  EXPECT_NEAR(r.zeta_at_0.real(), -0.5, 1e-12);
  EXPECT_NEAR(r.zeta_prime_at_0.real(), -half_log_2pi, 1e-8);
  EXPECT_NEAR(r.ln_det.real(), half_log_2pi, 1e-8);
  EXPECT_NEAR(r.w0.real(), -0.5 * half_log_2pi, 1e-8);
  EXPECT_LT(r.error_estimate, 1e-7);
}

TEST(LogDet, PowerLawChainRule) {
  const zeta_engine engine;
  const double h = 1e-4;
  const double fd = (engine.zeta(2.0 * h).real() - engine.zeta(-2.0 * h).real()) / (2.0 * h);
  const auto& r = as_regularized(regularized_log_det(operator_spectrum::power_law(2), 3.0, pz()));
  EXPECT_NEAR(r.zeta_prime_at_0.real(), fd, 1e-6);
  EXPECT_NEAR(r.zeta_prime_at_0.real(), -2.0 * half_log_2pi, 1e-6);
  EXPECT_NEAR(r.zeta_at_0.real(), -0.5, 1e-12);
}

TEST(LogDet, ExplicitDeterminantIdentity) {
  EXPECT_NEAR(as_regularized(regularized_log_det(operator_spectrum::from_eigenvalues({2, 3}), 7.0, pz()))
                  .ln_det.real(),
              std::log(6.0), 1e-12);
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(0.1, 30.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> eig(static_cast<std::size_t>(1 + trial));
    for (auto& x : eig) x = dist(rng);
    std::sort(eig.begin(), eig.end());
    double product = 1.0;
    for (double x : eig) product *= x;
    const auto& r = as_regularized(regularized_log_det(operator_spectrum::from_eigenvalues(eig), 1.0, pz()));
    EXPECT_NEAR(std::exp(-r.zeta_prime_at_0.real()) / product, 1.0, 1e-10);
    EXPECT_EQ(r.zeta_at_0.real(), static_cast<double>(eig.size()));
  }
}

TEST(LogDet, PrimesNeverRegularized) {
  prime_zeta_config small_k;
  small_k.k_max = 50;
  const prime_zeta other(tables(), zeros_table{}, small_k);
  for (const prime_zeta* p : {&pz(), &other}) {
    for (double mu : {1e-3, 0.1, 1.0, 10.0, 1e4}) {
      const auto v = regularized_log_det(operator_spectrum::primes(), mu, *p);
      ASSERT_FALSE(v.is_regularized());
      const auto& n = std::get<not_regularizable>(v.status);
      EXPECT_EQ(n.reason, "prime zeta function admits no continuation to s = 0");
      EXPECT_FALSE(n.diagnostics.empty());
    }
  }
}

TEST(LogDet, PrimeDiagnostics) {
  const auto v = regularized_log_det(operator_spectrum::primes(), 1.0, pz());
  const auto& n = std::get<not_regularizable>(v.status);
  EXPECT_GE(n.accumulating_points.size(), 5u);
  for (const auto& p : n.accumulating_points) {
    EXPECT_GT(p.location.real(), 0.0);
    EXPECT_LE(p.location.real(), 0.1);
  }
  EXPECT_FALSE(n.boundary_samples.empty());
  for (const auto& s : n.boundary_samples) {
    EXPECT_GE(s.sigma, n.smallest_admissible_sigma);
    EXPECT_TRUE(std::isfinite(s.abs_p));
  }
  EXPECT_GT(n.smallest_admissible_sigma, 0.0);
}

TEST(LogDet, TotalOverSpectra) {
  const std::vector<operator_spectrum> spectra{
      operator_spectrum::power_law(1), operator_spectrum::power_law(3), operator_spectrum::primes(),
      operator_spectrum::from_eigenvalues({0.5}), operator_spectrum::from_eigenvalues({1, 1, 4})};
  for (const auto& s : spectra) {
    for (double mu : {0.5, 2.0}) EXPECT_NO_THROW(static_cast<void>(regularized_log_det(s, mu, pz())));
  }
}

TEST(ScalingCheck, Residuals) {
  for (double mu : {0.5, 1.0, std::numbers::e, 10.0}) {
    EXPECT_LT(scaling_check(operator_spectrum::power_law(1), mu, pz()), 1e-8) << mu;
    EXPECT_LT(scaling_check(operator_spectrum::power_law(2), mu, pz()), 1e-8) << mu;
    EXPECT_LT(scaling_check(operator_spectrum::from_eigenvalues({0.3, 2, 9}), mu, pz()), 1e-12) << mu;
  }
  EXPECT_LT(scaling_check(operator_spectrum::from_eigenvalues({1, 2, 3}), 2.0, pz()), 1e-12);
  EXPECT_THROW(static_cast<void>(scaling_check(operator_spectrum::primes(), 1.0, pz())), domain_error);
}

TEST(CutoffEnergy, GeometricClosedForm) {
  const double eps = 0.1;
  const double closed = std::exp(-eps) / std::pow(1.0 - std::exp(-eps), 2);
  EXPECT_NEAR(cutoff_energy(operator_spectrum::power_law(1), eps, tables()), closed, 1e-10);
}

TEST(CutoffEnergy, FirstTermDominatesForLargeEpsilon) {
  EXPECT_NEAR(cutoff_energy(operator_spectrum::power_law(1), 50.0, tables()) / std::exp(-50.0), 1.0, 1e-12);
  EXPECT_NEAR(cutoff_energy(operator_spectrum::primes(), 50.0, tables()) / (2.0 * std::exp(-100.0)), 1.0, 1e-12);
  EXPECT_NEAR(cutoff_energy(operator_spectrum::from_eigenvalues({3, 4}), 50.0, tables()) /
                  (3.0 * std::exp(-150.0)),
              1.0, 1e-12);
}

TEST(CutoffEnergy, PrimesMatchIndependentSum) {
  const auto composite = oracle::odd_sieve(100000);
  long double sum = 2.0L * std::exp(-0.02L);
  for (std::size_t i = 1; 2 * i + 1 <= 100000; ++i) {
    if (!composite[i]) sum += (2.0L * i + 1) * std::exp(-0.01L * (2.0L * i + 1));
  }
  EXPECT_NEAR(cutoff_energy(operator_spectrum::primes(), 0.01, tables()), static_cast<double>(sum), 1e-9);
}

TEST(CutoffEnergy, StrictlyDecreasing) {
  const auto grid = log_spaced(0.002, 0.5, 25);
  for (const auto& s : {operator_spectrum::power_law(1), operator_spectrum::power_law(2), operator_spectrum::primes(),
                        operator_spectrum::from_eigenvalues({1, 5, 8})}) {
    double previous = std::numeric_limits<double>::infinity();
    for (double eps : grid) {
      const double e = cutoff_energy(s, eps, tables());
      EXPECT_GT(e, 0.0);
      EXPECT_LT(e, previous) << s.description << " eps " << eps;
      previous = e;
    }
  }
}

TEST(CutoffEnergy, Errors) {
  EXPECT_THROW(static_cast<void>(cutoff_energy(operator_spectrum::power_law(1), 0.0, tables())), domain_error);
  const number_tables tiny(1000);
  EXPECT_THROW(static_cast<void>(cutoff_energy(operator_spectrum::primes(), 1e-3, tiny)), accuracy_error);
}

TEST(CutoffFit, IntegerFinitePartIsZetaMinusOne) {
  const auto fit = fit_cutoff(operator_spectrum::power_law(1), log_spaced(0.005, 0.05, 12), false, tables());
  EXPECT_NEAR(fit.finite_part, -1.0 / 12.0, 1e-4);
  EXPECT_NEAR(fit.finite_part, zeta_engine{}.zeta(-1.0).real(), 1e-4);
  EXPECT_LT(fit.stability, 1e-4);
  EXPECT_GE(fit.stability, 0.0);
  EXPECT_EQ(fit.basis, (std::vector<std::string>{"eps^-2", "eps^-1", "eps^0", "eps^1", "eps^2"}));
  EXPECT_NEAR(fit.coefficients[0], 1.0, 1e-6);
}

TEST(CutoffFit, PrimesUnstable) {
  const auto grid = log_spaced(0.002, 0.02, 12);
  const auto ints = fit_cutoff(operator_spectrum::power_law(1), grid, false, tables());
  const auto primes = fit_cutoff(operator_spectrum::primes(), grid, false, tables());
  EXPECT_GT(primes.stability, 10.0 * ints.stability);
  const auto with_log = fit_cutoff(operator_spectrum::primes(), grid, true, tables());
  EXPECT_EQ(with_log.basis.size(), 7u);
}

TEST(CutoffFit, SingleEigenvalueSmoke) {
  const auto fit = fit_cutoff(operator_spectrum::from_eigenvalues({5}), log_spaced(0.01, 0.1, 10), false, tables());
  EXPECT_NEAR(fit.finite_part, 5.0, 0.5);
}

TEST(CutoffFit, Preconditions) {
  const auto s = operator_spectrum::power_law(1);
  EXPECT_THROW(static_cast<void>(fit_cutoff(s, log_spaced(0.01, 0.1, 7), false, tables())), domain_error);
  EXPECT_THROW(static_cast<void>(fit_cutoff(s, log_spaced(0.01, 0.05, 10), false, tables())), domain_error);
  EXPECT_THROW(static_cast<void>(fit_cutoff(s, log_spaced(0.1, 2.0, 10), true, tables())), domain_error);
  const std::vector<double> repeated{0.01, 0.01, 0.01, 0.01, 0.1, 0.1, 0.1, 0.1};
  EXPECT_THROW(static_cast<void>(fit_cutoff(s, repeated, false, tables())), conditioning_error);
}

TEST(LogSpaced, Endpoints) {
  const auto g = log_spaced(0.005, 0.05, 12);
  ASSERT_EQ(g.size(), 12u);
  EXPECT_EQ(g.front(), 0.005);
  EXPECT_EQ(g.back(), 0.05);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_NEAR(g[i] / g[i - 1], std::pow(10.0, 1.0 / 11.0), 1e-12);
}
