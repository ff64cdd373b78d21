#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fracsum/continuations.hpp"
#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"
#include "fracsum/special.hpp"

namespace fracsum::engine {
namespace {

TEST(CompensatedSum, TenMillionTenths) {
  CompensatedSum sum;
  for (int i = 0; i < 10'000'000; ++i) sum.add(0.1);
  EXPECT_NEAR(sum.value(), 1e6, 1e-6);
}

TEST(CompensatedSum, Cancellation) {
  CompensatedSum sum;
  sum += 1e100;
  sum += 1.0;
  sum += -1e100;
  EXPECT_EQ(sum.value(), 1.0);
}

TEST(SumSeries, Geometric) {
  const auto r = sum_series([](double k) { return std::pow(2.0, -k); }, {1e-12});
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(SumSeries, Telescoping) {
  const auto r = sum_series([](double k) { return 1.0 / (k * (k + 1.0)); });
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(SumSeries, SlowMonotoneUsesTail) {
  const auto r = sum_series([](double k) { return 1.0 / (k * k); }, {1e-12});
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, M_PI * M_PI / 6.0, 1e-11);
  EXPECT_LT(r.terms_used, 10'000u);
}

TEST(SumSeries, AlternatingHarmonic) {
  const auto r = sum_series([](double k) { return (std::fmod(k, 2.0) == 1.0 ? 1.0 : -1.0) / k; });
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, std::log(2.0), 1e-10);
}

TEST(SumSeries, IrregularOscillation) {
  // sum sin(k)/k = (pi - 1)/2
  const auto r = sum_series([](double k) { return std::sin(k) / k; }, {1e-10});
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, (M_PI - 1.0) / 2.0, 1e-9);
}

TEST(SumSeries, Divergence) {
  const auto r = sum_series([](double k) { return std::pow(1.1, k); });
  EXPECT_EQ(r.verdict, Verdict::diverged);
}

TEST(SumSeries, BitIdenticalRepeats) {
  const auto term = [](double k) { return 1.0 / std::pow(k, 1.5); };
  const auto a = sum_series(term);
  for (int i = 0; i < 5; ++i) {
    const auto b = sum_series(term);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.terms_used, b.terms_used);
  }
}

TEST(SumSeries, DoublingBudgetIsStable) {
  const std::vector<TermFunction> terms{
      [](double k) { return 1.0 / (k * k); },
      [](double k) { return std::exp(-k / 3.0); },
      [](double k) { return (std::fmod(k, 2.0) == 1.0 ? 1.0 : -1.0) / std::sqrt(k); },
      [](double k) { return 1.0 / (k * std::sqrt(k)); },
  };
  const double tol = 1e-10;
  for (const auto& t : terms) {
    const auto a = sum_series(t, {tol, 100'000});
    ASSERT_TRUE(a.ok());
    const auto b = sum_series(t, {tol, 200'000});
    EXPECT_LT(std::fabs(a.value - b.value), 2.0 * tol);
  }
}

TEST(Accelerators, AitkenAndWynnOnLogTwo) {
  std::vector<double> partial;
  double s = 0.0;
  for (int k = 1; k <= 20; ++k) {
    s += (k % 2 ? 1.0 : -1.0) / k;
    partial.push_back(s);
  }
  EXPECT_NEAR(aitken_extrapolate(partial), std::log(2.0), 1e-10);
  EXPECT_NEAR(wynn_epsilon(partial), std::log(2.0), 1e-12);
}

TEST(Integrate, Basics) {
  EXPECT_NEAR(integrate([](double t) { return t; }, 0.0, 1.0).value, 0.5, 1e-15);
  EXPECT_NEAR(integrate([](double t) { return std::sin(t); }, 0.0, M_PI).value, 2.0, 1e-13);
  EXPECT_NEAR(integrate([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0, 1e-10).value, 2.0,
              1e-8);
  EXPECT_NEAR(integrate([](double t) { return t * t; }, 2.0, 0.0).value, -8.0 / 3.0, 1e-14);
}

TEST(Integrate, HarmonicOverUnitInterval) {
  const auto r = integrate([](double t) { return harmonic(t); }, 0.0, 1.0, 1e-12);
  EXPECT_TRUE(r.ok());
  EXPECT_NEAR(r.value, special::euler_gamma(), 1e-10);
}

TEST(Integrate, ToInfinity) {
  const auto r = integrate_to_infinity([](double t) { return std::exp(-t); }, 1.0);
  EXPECT_NEAR(r.value, std::exp(-1.0), 1e-12);
  const auto p = integrate_to_infinity([](double t) { return 1.0 / (t * t); }, 2.0);
  EXPECT_NEAR(p.value, 0.5, 1e-10);
}

TEST(Integrate, NonFiniteSampleThrows) {
  EXPECT_THROW(integrate([](double t) { return std::log(t - 0.5); }, 0.0, 1.0), DomainError);
}

TEST(BracketCheck, Examples) {
  const auto inv = make_summand("1/k", 0.0, Monotonicity::decreasing);
  EXPECT_TRUE(bracket_check(inv, 2.5, 1e-10));
  EXPECT_TRUE(bracket_check(inv, 3.0, 1e-10));
  const auto ex = make_summand("exp(-k)", 0.0, Monotonicity::decreasing);
  EXPECT_TRUE(bracket_check(ex, 0.5, 1e-10));
  EXPECT_THROW(bracket_check(make_summand("1/k", 0.0), 2.5, 1e-10), InvalidArgument);
}

TEST(DifferenceTail, MatchesDirectIntegral) {
  const auto f = make_summand("1/k^2", 0.0);
  const auto tail = difference_tail(f, 0.0, 0.5, 0.0);
  const auto direct = integrate_to_infinity(
      [&](double t) { return f(t) - f(t + 0.5); }, 10.0, {1e-13, 2000});
  EXPECT_NEAR(tail(10.0), direct.value, 1e-12);
}

}  // namespace
}  // namespace fracsum::engine
