#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "zetareg/errors.hpp"
#include "zetareg/primezeta.hpp"

using namespace zetareg;

namespace {

const number_tables& tables() {
  static const number_tables t(1'000'000);
  return t;
}

const zeros_table& zeros() {
  static const zeros_table z = find_zeros(zeta_engine{}, 0.0, 60.0);
  return z;
}

const prime_zeta& pz() {
  static const prime_zeta p(tables(), zeros());
  return p;
}

void expect_complex_near(complex a, complex b, double tol) {
  EXPECT_LT(std::abs(a - b), tol) << a << " vs " << b;
}

}  // namespace

TEST(TruncationOrder, Policy) {
  // ceil(ln(1e10) / (0.1 ln 2)) + 8 = 333 + 8
  EXPECT_EQ(truncation_order(0.1, 1e-10), 341);
  EXPECT_EQ(truncation_order(2.0, 1e-10), 25);
  EXPECT_THROW(static_cast<void>(truncation_order(0.0, 1e-10)), domain_error);
}

// Reference values from mpmath primezeta.
TEST(PrimeZeta, ReferenceValues) {
  expect_complex_near(pz().continued(2.0).value, 0.452247420041065499, 1e-12);
  expect_complex_near(pz().continued(3.0).value, 0.174762639299443536, 1e-12);
  expect_complex_near(pz().continued(0.8).value, {0.956679835053391562, std::numbers::pi}, 1e-9);
  expect_complex_near(pz().derivative(2.0).value, -0.493091109368764462, 1e-11);
  expect_complex_near(pz().derivative(3.0).value, -0.150757555543950422, 1e-11);
}

TEST(PrimeZeta, DirectMatchesIndependentSieve) {
  EXPECT_NEAR(pz().direct(3.0, 1e-10).real(), oracle::prime_sum(3.0, 1'000'000), 1e-12);
  EXPECT_THROW(static_cast<void>(pz().direct(1.05, 1e-10)), domain_error);
  EXPECT_THROW(static_cast<void>(pz().direct(1.2, 1e-10)), accuracy_error);
}

TEST(PrimeZeta, ContinuedMatchesDirect) {
  for (double sigma : {1.6, 2.0, 2.7}) {
    for (double tau : {-10.0, 0.0, 4.0, 25.0}) {
      const complex s(sigma, tau);
      const double tail = pz().direct_tail_estimate(sigma);
      const auto c = pz().continued(s);
      const complex d = pz().direct(s, 2.0 * tail + 1e-15);
      EXPECT_LT(std::abs(c.value - d), c.error_estimate + tail + 1e-12) << s;
    }
  }
}

TEST(PrimeZeta, DerivativeMatchesDirect) {
  const complex s(2.2, 3.0);
  const double tail = pz().direct_derivative_tail_estimate(2.2);
  const auto c = pz().derivative(s);
  expect_complex_near(c.value, pz().direct_derivative(s, 2.0 * tail), c.error_estimate + tail + 1e-12);
}

TEST(PrimeZeta, SchwarzReflection) {
  for (complex s : {complex(0.3, 2.0), complex(0.7, 9.0), complex(1.4, 0.5), complex(0.15, 1.0)}) {
    const auto a = pz().continued(s);
    const auto b = pz().continued(std::conj(s));
    if (!a.branch_flags.empty() || !b.branch_flags.empty()) continue;
    expect_complex_near(b.value, std::conj(a.value), 1e-10);
  }
}

TEST(PrimeZeta, TruncationMonotone) {
  for (complex s : {complex(0.4, 1.0), complex(1.2, -3.0), complex(2.5, 0.0)}) {
    const auto v = pz().continued(s);
    const auto longer = pz().continued_with_order(s, v.k_used + 30);
    EXPECT_LT(std::abs(longer.value - v.value), v.error_estimate + 1e-15) << s;
  }
}

TEST(PrimeZeta, SingularPoints) {
  for (long k : {2L, 3L, 5L, 6L, 7L}) {
    try {
      static_cast<void>(pz().continued(1.0 / static_cast<double>(k)));
      ADD_FAILURE() << "no error at 1/" << k;
    } catch (const singularity_error& e) {
      EXPECT_EQ(e.kind(), singularity_kind::pole_image);
      EXPECT_EQ(e.k(), k);
    }
  }
  try {
    static_cast<void>(pz().continued(complex(0.5, zeros().ordinates[0]) / 2.0));
    ADD_FAILURE() << "no error at rho_1 / 2";
  } catch (const singularity_error& e) {
    EXPECT_EQ(e.kind(), singularity_kind::zero_image);
    EXPECT_EQ(e.k(), 2);
    EXPECT_EQ(e.zero_index(), 0u);
  }
  // 1/4 is not singular: mu(4) = 0.
  EXPECT_NO_THROW(static_cast<void>(pz().continued(0.25)));
}

TEST(PrimeZeta, GrowsTowardOneHalf) {
  double previous = 0.0;
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const double a = std::abs(pz().continued(0.5 + eps).value);
    EXPECT_GT(a, previous) << eps;
    EXPECT_GT(a, 0.5 * std::log(1.0 / eps) - 2.0) << eps;
    previous = a;
  }
}

TEST(PrimeZeta, NoContinuationToLeftHalfPlane) {
  for (complex s : {complex(0.0, 0.0), complex(-1.0, 0.0), complex(0.0, 5.0), complex(-1e-9, 0.3)}) {
    try {
      static_cast<void>(pz().continued(s));
      ADD_FAILURE() << s;
    } catch (const no_continuation_error& e) {
      EXPECT_NE(std::string(e.what()).find("no continuation to Re(s) <= 0"), std::string::npos);
    }
  }
}

TEST(PrimeZeta, HeightLimit) {
  // Re(ks) < 2 for k <= 3, so 3 * 40 > 60.
  EXPECT_THROW(static_cast<void>(pz().continued({0.5, 40.0})), accuracy_error);
  EXPECT_NO_THROW(static_cast<void>(pz().continued({0.5, 19.9})));
}

TEST(PrimeZeta, LnZetaExpansion) {
  EXPECT_LT(pz().ln_zeta_expansion_check(2.0, 40), 1e-10);
  EXPECT_LT(pz().ln_zeta_expansion_check({2.5, 7.0}, 40), 1e-10);
  EXPECT_THROW(static_cast<void>(pz().ln_zeta_expansion_check(1.0, 40)), domain_error);
}

TEST(SingularityCatalog, RealPolesMatchSquareFreeCount) {
  const auto c = make_singularity_catalog({0.0, 1.0, 0.0, 0.0}, 1000, zeros(), tables());
  long expected = 0;
  for (std::uint64_t k = 1; k <= 1000; ++k) expected += oracle::moebius_trial_division(k) != 0;
  EXPECT_EQ(static_cast<long>(c.entries.size()), expected);
  std::vector<int> seen(1001, 0);
  for (const auto& p : c.entries) {
    ASSERT_EQ(p.kind, singularity_kind::pole_image);
    EXPECT_DOUBLE_EQ(p.location.real(), 1.0 / static_cast<double>(p.k));
    ++seen[static_cast<std::size_t>(p.k)];
  }
  for (std::uint64_t k = 1; k <= 1000; ++k) EXPECT_EQ(seen[k], oracle::moebius_trial_division(k) != 0 ? 1 : 0);
}

TEST(SingularityCatalog, ZeroImagesAndOrdering) {
  const auto c = make_singularity_catalog({0.0, 1.0, -20.0, 20.0}, 10, zeros(), tables());
  bool found = false;
  for (const auto& p : c.entries) {
    if (p.kind == singularity_kind::zero_image && p.k == 1 && p.zero_index == 0u) {
      found = true;
      expect_complex_near(p.location, {0.5, std::copysign(zeros().ordinates[0], p.location.imag())}, 1e-15);
    }
  }
  EXPECT_TRUE(found);
  for (std::size_t i = 1; i < c.entries.size(); ++i) {
    const auto a = c.entries[i - 1].location;
    const auto b = c.entries[i].location;
    EXPECT_TRUE(a.real() < b.real() || (a.real() == b.real() && a.imag() <= b.imag()));
  }
  EXPECT_THROW(static_cast<void>(make_singularity_catalog({-0.1, 1.0, 0.0, 0.0}, 10, zeros(), tables())),
               domain_error);
}

TEST(SingularityCatalog, AccumulatesAtZero) {
  const auto a = make_singularity_catalog({0.0, 0.01, 0.0, 0.0}, 1000, zeros(), tables());
  const auto b = make_singularity_catalog({0.0, 0.01, 0.0, 0.0}, 2000, zeros(), tables());
  EXPECT_GT(b.entries.size(), a.entries.size());
}

TEST(StripScan, FlagsAndOrder) {
  const window w{0.3, 0.7, -2.0, 2.0};
  const auto pts = strip_scan(pz(), w, 5, 3);
  ASSERT_EQ(pts.size(), 15u);
  EXPECT_DOUBLE_EQ(pts[0].sigma, 0.3);
  EXPECT_DOUBLE_EQ(pts[0].tau, -2.0);
  EXPECT_DOUBLE_EQ(pts[1].tau, 0.0);
  EXPECT_DOUBLE_EQ(pts[3].sigma, 0.4);
  // sigma = 0.5, tau = 0 sits on the pole image 1/2.
  EXPECT_EQ(pts[7].flag, scan_flag::singular);
  EXPECT_FALSE(pts[7].value.has_value());
  EXPECT_EQ(pts[0].flag, scan_flag::ok);
}

TEST(StripScan, ThreadCountDoesNotChangeOutput) {
  const window w{0.2, 1.5, -5.0, 5.0};
  const auto one = strip_scan(pz(), w, 7, 6, 1);
  const auto many = strip_scan(pz(), w, 7, 6, 4);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].flag, many[i].flag);
    EXPECT_EQ(one[i].value.has_value(), many[i].value.has_value());
    if (one[i].value) EXPECT_EQ(*one[i].value, *many[i].value);
  }
  EXPECT_THROW(static_cast<void>(strip_scan(pz(), {0.0, 1.0, 0.0, 1.0}, 3, 3)), no_continuation_error);
}

TEST(PrimeZetaConfig, Validation) {
  prime_zeta_config c;
  c.exclusion_radius = 0.0;
  EXPECT_THROW(c.validate(), domain_error);
}
