#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracsum/continuations.hpp"
#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"
#include "fracsum/frac_sum.hpp"
#include "oracles.hpp"

namespace fracsum {
namespace {

using test::make_request;

double direct_alternating(int n) {
  double s = 0.0;
  for (int k = n; k >= 1; --k) s += (k % 2 ? 1.0 : -1.0) / k;
  return s;
}

TEST(Harmonic, Examples) {
  EXPECT_NEAR(harmonic(1.0), 1.0, 1e-13);
  EXPECT_NEAR(harmonic(0.5), test::harmonic_oracle(0.5), 1e-12);
  EXPECT_NEAR(harmonic(0.5), 2.0 - 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(harmonic(2.5) - harmonic(1.5), 0.4, 1e-12);
  EXPECT_THROW(harmonic(-2.0), DomainError);
}

TEST(Harmonic, MatchesFracSum) {
  const auto f = make_summand("1/k", 0.0);
  std::mt19937 rng(29u);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int i = 0; i < 50; ++i) {
    const double x = d(rng);
    EXPECT_NEAR(harmonic(x), frac_sum({f, 1.0, x, 1e-12}).value, 1e-9) << x;
  }
}

TEST(GenHarmonic, Examples) {
  EXPECT_NEAR(gen_harmonic(1.0, 2.0), 1.0, 1e-13);
  EXPECT_NEAR(gen_harmonic(3.0, 2.0), 1.0 + 0.25 + 1.0 / 9.0, 1e-13);
  EXPECT_NEAR(gen_harmonic(0.5, 2.0), 4.0 - M_PI * M_PI / 3.0, 1e-12);
}

TEST(GenHarmonic, MatchesFracSum) {
  std::mt19937 rng(31u);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (double m : {2.0, 3.0, 4.5}) {
    char src[32];
    std::snprintf(src, sizeof src, "k^(-%g)", m);
    const auto f = make_summand(src, 0.0);
    for (int i = 0; i < 10; ++i) {
      const double x = d(rng);
      EXPECT_NEAR(gen_harmonic(x, m), frac_sum({f, 1.0, x, 1e-12}).value, 1e-9) << m << " " << x;
    }
  }
}

TEST(GenHarmonic, IntegralIdentity) {
  // int_0^x H_t^(m) dt - zeta(m) x = -H_x^(m-1) / (m-1)
  const double m = 3.0;
  for (double x : {0.5, 1.0, 2.5}) {
    const auto q = engine::integrate([&](double t) { return gen_harmonic(t, m); }, 0.0, x, 1e-13);
    const double lhs = q.value - test::riemann_oracle(m) * x;
    EXPECT_NEAR(lhs, -gen_harmonic(x, m - 1.0) / (m - 1.0), 1e-7) << x;
  }
}

TEST(AltHarmonic, Examples) {
  EXPECT_NEAR(alt_harmonic(0.5), std::log(2.0), 1e-14);
  EXPECT_NEAR(alt_harmonic(1.0), 1.0, 1e-14);
  EXPECT_EQ(alt_harmonic(0.0), 0.0);
  EXPECT_THROW(alt_harmonic(-3.0), DomainError);
}

TEST(AltHarmonic, IntegersAndHalfIntegers) {
  for (int n = 1; n <= 30; ++n) EXPECT_NEAR(alt_harmonic(n), direct_alternating(n), 1e-12) << n;
  for (double x = -9.5; x <= 9.5; x += 1.0) EXPECT_NEAR(alt_harmonic(x), std::log(2.0), 1e-12);
}

TEST(AltHarmonic, SeriesFormAgrees) {
  for (double x : {-2.3, -0.6, 0.25, 1.7, 4.4, 9.9}) {
    EXPECT_NEAR(alt_harmonic(x), alt_harmonic_series(x), 1e-10) << x;
  }
}

TEST(AltHarmonic, MatchesFracSumOfParitySummand) {
  for (double x : {0.3, 2.7, 6.1}) {
    EXPECT_NEAR(alt_harmonic(x), frac_sum(make_request("(-1)^(k+1)/k", 0.0, 1.0, x)).value, 1e-9);
  }
}

TEST(AltHarmonic, Reflection) {
  for (double x : {0.5, 2.5, -0.7}) EXPECT_LT(alt_harmonic_reflection_residual(x), 1e-10) << x;
  std::mt19937 rng(37u);
  std::uniform_real_distribution<double> d(-10.0, 10.0);
  int checked = 0;
  while (checked < 100) {
    const double x = d(rng);
    if (std::fabs(x - std::round(x)) < 1e-3) continue;
    ++checked;
    EXPECT_LT(alt_harmonic_reflection_residual(x), 1e-9) << x;
  }
  EXPECT_THROW(alt_harmonic_reflection_residual(2.0), DomainError);
}

TEST(AltHarmonic, RootOffset) {
  EXPECT_NEAR(alt_harmonic_root_offset(), std::atan(M_PI / std::log(2.0)) / M_PI, 1e-15);
  EXPECT_NEAR(alt_harmonic_root_offset(), 0.43087694513694819, 1e-15);
}

TEST(AltHarmonic, Roots) {
  const auto roots = alt_harmonic_roots(50);
  ASSERT_EQ(roots.size(), 50u);
  const double offset = alt_harmonic_root_offset();
  for (const auto& r : roots) {
    ASSERT_TRUE(r.found) << r.index_n;
    const double n = static_cast<double>(r.index_n);
    EXPECT_GT(r.location, -n - 1.0);
    EXPECT_LT(r.location, -n);
    EXPECT_LT(r.residual, 1e-9);
  }
  const double e5 = std::fabs(roots[4].location + 5.0 + offset);
  const double e50 = std::fabs(roots[49].location + 50.0 + offset);
  EXPECT_LT(e5, 1e-2);
  EXPECT_LT(e50, 1e-3);
  EXPECT_LT(e50, e5);
  double e10 = std::fabs(roots[9].location + 10.0 + offset);
  double e20 = std::fabs(roots[19].location + 20.0 + offset);
  EXPECT_LT(e10, e5);
  EXPECT_LT(e20, e10);
  EXPECT_LT(e50, e20);
}

TEST(ZetaSeries, Identities) {
  using special::PochhammerConvention;
  EXPECT_NEAR(zeta_series_identity(2, 40), test::riemann_oracle(2.0) - 1.0, 1e-8);
  EXPECT_EQ(zeta_series_identity(2, 1), 0.0);
  // m = 3 converges to the integral of H^(3) over [0, 1].
  const auto q = engine::integrate([](double t) { return gen_harmonic(t, 3.0); }, 0.0, 1.0, 1e-13);
  EXPECT_NEAR(zeta_series_identity(3, 40), q.value, 1e-8);
  EXPECT_NEAR(zeta_gamma_series(60), special::euler_gamma(), 1e-10);
  // The raw partial sums are far from the limit.
  EXPECT_GT(std::fabs(zeta_gamma_series(60, true) - special::euler_gamma()), 1e-3);
}

TEST(ZetaSeries, ConventionsAgreeOnlyAtMTwo) {
  using special::PochhammerConvention;
  const double f2 = zeta_series_identity(2, 40, PochhammerConvention::falling);
  const double r2 = zeta_series_identity(2, 40, PochhammerConvention::rising);
  EXPECT_NEAR(f2, r2, 1e-12);
  const double a3 = zeta_series_identity(3, 40, PochhammerConvention::factorial_ratio);
  const double f3 = zeta_series_identity(3, 40, PochhammerConvention::falling);
  EXPECT_GT(std::fabs(a3 - f3), 1e-3);
}

}  // namespace
}  // namespace fracsum
