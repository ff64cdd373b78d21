#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fracsum/error.hpp"
#include "fracsum/extensions.hpp"
#include "fracsum/special.hpp"
#include "oracles.hpp"

namespace fracsum {
namespace {

double max_err(const std::vector<ApproxSample>& samples) {
  double m = 0.0;
  for (const auto& s : samples) m = std::max(m, s.abs_err);
  return m;
}

TEST(EmApproximation, Examples) {
  const auto inv = make_summand("1/k", 0.0);
  EXPECT_NEAR(em_approximation(inv, 3.0), test::hurwitz_oracle(2.0, 4.0), 1e-11);
  EXPECT_NEAR(std::fabs(em_approximation(inv, 3.0) - 1.0 / 3.0), 0.0495, 1e-4);
  const auto ex = make_summand("exp(-k)", 0.0);
  EXPECT_NEAR(em_approximation(ex, 5.0), std::exp(-5.0), 0.05);
  const double s = em_approximation(make_summand("sin(k)/k", 0.0), 4.0);
  EXPECT_TRUE(std::isfinite(s));
}

TEST(EmApproximation, ErrorShrinksAtLargerIntegers) {
  const auto inv = make_summand("1/k", 0.0);
  double prev = 1e300;
  for (double x : {2.0, 5.0, 10.0}) {
    const double e = std::fabs(em_approximation(inv, x) - 1.0 / x);
    EXPECT_LT(e, prev) << x;
    prev = e;
  }
}

TEST(EmCurve, Grids) {
  EXPECT_TRUE(em_approx_curve(make_summand("1/k", 0.0), 6.0, 1.0, 0.05).empty());
  const auto g = make_grid(1.0, 6.0, 0.05);
  EXPECT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 1.0);
  EXPECT_NEAR(g.back(), 6.0, 1e-12);
  EXPECT_EQ(make_grid(0.0, 1.04, 0.1).size(), 11u);
  EXPECT_THROW(make_grid(0.0, 1.0, 0.0), InvalidArgument);
}

TEST(EmCurve, Figures) {
  // Exponential: the curve stays within 0.16 and improves to the right.
  const auto ex = em_approx_curve(make_summand("exp(-k)", 0.0), 1.0, 6.0, 0.05);
  EXPECT_LT(max_err(ex), 0.16);
  EXPECT_LT(ex.back().abs_err, ex.front().abs_err);
  const auto sinc = em_approx_curve(make_summand("sin(k)/k", 0.0), 1.0, 10.0, 0.05);
  EXPECT_LT(max_err(sinc), 0.3);
  // Reciprocal: worst at x = 1, where the approximation gives zeta(2) - 1.
  const auto inv = em_approx_curve(make_summand("1/k", 0.0), 1.0, 6.0, 0.05);
  EXPECT_NEAR(inv.front().abs_err, 2.0 - M_PI * M_PI / 6.0, 1e-10);
  EXPECT_LT(inv.back().abs_err, inv.front().abs_err);
  for (const auto& s : inv) EXPECT_TRUE(s.error.empty());
}

TEST(EmCurve, FailingPointsAreRecorded) {
  const auto samples = em_approx_curve(make_summand("ln(k-2)", 0.0), 1.0, 3.0, 1.0);
  ASSERT_EQ(samples.size(), 3u);
  EXPECT_FALSE(samples[0].error.empty());
  EXPECT_TRUE(std::isnan(samples[0].abs_err));
}

TEST(Antisum, Examples) {
  const auto one = make_summand("1", 1.0);
  const auto F1 = make_summand("k", std::nullopt);
  EXPECT_NEAR(sum_antiderivative(one, F1, 1.0, 4.0).value, 10.0, 1e-9);
  EXPECT_NEAR(sum_antiderivative_lower(one, F1, 1.0, 4.0).value, 10.0, 1e-9);

  // f = k through its closed form from the previous application.
  const InnerSum triangular = [](double lower, double upper) {
    return (upper * (upper + 1.0) - (lower - 1.0) * lower) / 2.0;
  };
  const auto F2 = make_summand("k^2/2", std::nullopt);
  EXPECT_NEAR(sum_antiderivative(triangular, F2, 1.0, 3.0).value, 7.0, 1e-9);

  const auto inv = make_summand("1/k", 0.0);
  const auto ln = make_summand("ln(k)", std::nullopt);
  EXPECT_NEAR(sum_antiderivative(inv, ln, 1.0, 3.0).value, std::log(6.0), 1e-8);
  EXPECT_NEAR(sum_antiderivative_lower(inv, ln, 1.0, 5.0).value, std::log(120.0), 1e-8);
  EXPECT_EQ(sum_antiderivative(inv, ln, 2.0, 1.0).value, 0.0);
  EXPECT_EQ(sum_antiderivative_lower(inv, ln, 2.0, 1.0).value, 0.0);
}

TEST(Antisum, RejectsWrongAntiderivative) {
  EXPECT_THROW(sum_antiderivative(make_summand("1/k", 0.0), make_summand("k", std::nullopt), 1.0,
                                  3.0),
               InvalidArgument);
}

TEST(Antisum, PolynomialClosedForms) {
  const auto one = make_summand("1", 1.0);
  const auto F1 = make_summand("k", std::nullopt);
  const InnerSum triangular = [](double lower, double upper) {
    return (upper * (upper + 1.0) - (lower - 1.0) * lower) / 2.0;
  };
  const auto F2 = make_summand("k^2/2", std::nullopt);
  std::mt19937 rng(41u);
  std::uniform_real_distribution<double> d(0.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double x = d(rng);
    EXPECT_NEAR(sum_antiderivative(one, F1, 1.0, x).value, (x * x + x) / 2.0, 1e-9) << x;
    EXPECT_NEAR(sum_antiderivative(triangular, F2, 1.0, x).value,
                x * (x + 1.0) * (2.0 * x + 1.0) / 12.0, 1e-9)
        << x;
  }
}

TEST(Antisum, LogFactorial) {
  const auto inv = make_summand("1/k", 0.0);
  const auto ln = make_summand("ln(k)", std::nullopt);
  for (double x : {0.5, 1.0, 2.5, 5.0}) {
    const double up = sum_antiderivative(inv, ln, 1.0, x).value;
    const double lo = sum_antiderivative_lower(inv, ln, 1.0, x).value;
    EXPECT_NEAR(up, std::lgamma(x + 1.0), 1e-7) << x;
    EXPECT_NEAR(lo, std::lgamma(x + 1.0), 1e-7) << x;
    EXPECT_NEAR(up, lo, 1e-7) << x;
  }
}

TEST(Antisum, RoutesAgree) {
  struct Pair {
    const char* f;
    double limit;
    const char* F;
  };
  const Pair pairs[] = {{"1", 1.0, "k"}, {"1/k", 0.0, "ln(k)"}, {"1/k^2", 0.0, "-1/k"}};
  std::mt19937 rng(43u);
  std::uniform_real_distribution<double> dy(1.0, 3.0);
  std::uniform_real_distribution<double> dw(0.0, 4.0);
  for (const auto& p : pairs) {
    const auto f = make_summand(p.f, p.limit);
    const auto F = make_summand(p.F, std::nullopt);
    for (int i = 0; i < 7; ++i) {
      const double y = dy(rng);
      const double x = y + dw(rng);
      const double up = sum_antiderivative(f, F, y, x).value;
      const double lo = sum_antiderivative_lower(f, F, y, x).value;
      EXPECT_NEAR(up, lo, 1e-7) << p.f << " y=" << y << " x=" << x;
    }
  }
}

TEST(Faulhaber, Polynomials) {
  EXPECT_NEAR(faulhaber_polynomial(1, 7.0), 28.0, 1e-12);
  for (std::size_t i = 0; i <= 8; ++i) {
    for (int n = 1; n <= 12; ++n) {
      double direct = 0.0;
      for (int k = 1; k <= n; ++k) direct += std::pow(k, static_cast<double>(i));
      EXPECT_NEAR(faulhaber_polynomial(i, n), direct, 1e-12 * direct) << i << " " << n;
    }
  }
  // Non-integer n: P_i(n) - P_i(n-1) = n^i.
  for (std::size_t i = 0; i <= 8; ++i) {
    for (double n : {0.5, 2.25, 7.7}) {
      const double diff = faulhaber_polynomial(i, n) - faulhaber_polynomial(i, n - 1.0);
      EXPECT_NEAR(diff, std::pow(n, static_cast<double>(i)), 1e-12 * (1.0 + std::pow(n, i)));
    }
  }
  // P_1(x) = (x^2 + x) / 2 for real x.
  EXPECT_NEAR(faulhaber_polynomial(1, 2.5), (2.5 * 2.5 + 2.5) / 2.0, 1e-14);
  EXPECT_THROW(faulhaber_polynomial(201, 1.0), InvalidArgument);
}

TEST(Faulhaber, Examples) {
  PowerSeriesSpec sq{0.0, {0.0, 0.0, 1.0}, 2};
  EXPECT_NEAR(faulhaber_sum(sq, 1.0, 4.0).value, 30.0, 1e-12);
  EXPECT_EQ(faulhaber_sum(sq, 1.0, 0.0).value, 0.0);

  const auto ek = taylor_series(expr::parse("exp(k)"), 0.0, 30);
  const auto r = faulhaber_sum(ek, 1.0, 5.0);
  EXPECT_TRUE(r.ok());
  const double want = M_E * (std::exp(5.0) - 1.0) / (M_E - 1.0);
  EXPECT_NEAR(r.value / want, 1.0, 1e-10);
}

TEST(Faulhaber, ExponentialAtIntegers) {
  const auto ek = taylor_series(expr::parse("exp(k)"), 0.0, 40);
  for (int x = 1; x <= 10; ++x) {
    const double want = M_E * (std::exp(x) - 1.0) / (M_E - 1.0);
    EXPECT_NEAR(faulhaber_sum(ek, 1.0, x).value / want, 1.0, 1e-6) << x;
  }
}

TEST(Faulhaber, DivergesOutsideRadius) {
  // Taylor series of 1/k about 1 has radius 1; summing up to x = 5 needs
  // the series at k = 5.
  const auto inv = taylor_series(expr::parse("1/k"), 1.0, 40);
  EXPECT_EQ(faulhaber_sum(inv, 1.0, 5.0).verdict, Verdict::diverged);
}

TEST(TaylorSeries, Coefficients) {
  const auto s = taylor_series(expr::parse("exp(k)"), 0.0, 10);
  ASSERT_EQ(s.coefficients.size(), 11u);
  double factorial = 1.0;
  for (int i = 0; i <= 10; ++i) {
    if (i) factorial *= i;
    EXPECT_NEAR(s.coefficients[i], 1.0 / factorial, 1e-15);
  }
}

}  // namespace
}  // namespace fracsum
