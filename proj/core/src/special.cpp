#include "fracsum/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "fracsum/error.hpp"

namespace fracsum::special {

BernoulliTable::BernoulliTable(std::size_t n) {
  values_.reserve(n + 1);
  values_.emplace_back(1);
  // Row m of Pascal's triangle for m+1, updated in place: binom[j] = C(m+1, j).
  std::vector<boost::multiprecision::cpp_int> binom{1, 1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<boost::multiprecision::cpp_int> next(m + 2);
    next[0] = 1;
    next[m + 1] = 1;
    for (std::size_t j = 1; j <= m; ++j) next[j] = binom[j - 1] + binom[j];
    binom = std::move(next);

    Rational acc = 0;
    for (std::size_t j = 0; j < m; ++j) acc += Rational(binom[j]) * values_[j];
    // C(m+1, m) = m + 1
    values_.push_back((Rational(m + 1) - acc) / Rational(m + 1));
  }
}

double BernoulliTable::as_double(std::size_t i) const {
  return static_cast<double>(values_.at(i));
}

BernoulliTable bernoulli_numbers(std::size_t n) { return BernoulliTable(n); }

double bernoulli_even(std::size_t two_j) {
  static const std::array<double, 21> table = [] {
    const BernoulliTable exact(40);
    std::array<double, 21> out{};
    for (std::size_t j = 0; j <= 20; ++j) out[j] = exact.as_double(2 * j);
    return out;
  }();
  if (two_j % 2 != 0 || two_j / 2 >= table.size()) {
    throw InvalidArgument("bernoulli_even: index must be even and <= 40");
  }
  return table[two_j / 2];
}

bool is_nonpositive_integer(double x) noexcept { return x <= 0.0 && std::trunc(x) == x; }

namespace {

// Reduces x to r in [-1, 1] with x = r + 2m, exactly.
double reduce_period_two(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return r;
}

}  // namespace

double sin_pi(double x) {
  if (!std::isfinite(x)) throw DomainError("sin_pi of a non-finite argument");
  double r = reduce_period_two(x);  // [-1, 1]
  double sign = 1.0;
  if (r < 0.0) {
    r = -r;
    sign = -1.0;
  }
  if (r > 0.5) r = 1.0 - r;  // sin(pi r) = sin(pi (1 - r))
  if (r == 0.0) return 0.0;
  if (r == 0.5) return sign;
  if (r > 0.25) return sign * std::cos(std::numbers::pi * (0.5 - r));
  return sign * std::sin(std::numbers::pi * r);
}

double cos_pi(double x) {
  if (!std::isfinite(x)) throw DomainError("cos_pi of a non-finite argument");
  double r = std::fabs(reduce_period_two(x));  // [0, 1]
  double sign = 1.0;
  if (r > 0.5) {
    r = 1.0 - r;
    sign = -1.0;
  }
  if (r == 0.5) return 0.0;
  if (r > 0.25) return sign * std::sin(std::numbers::pi * (0.5 - r));
  return sign * std::cos(std::numbers::pi * r);
}

double pi_cot_pi(double x) {
  const double s = sin_pi(x);
  if (s == 0.0) throw DomainError("cot(pi x) has a pole at integer x");
  return std::numbers::pi * cos_pi(x) / s;
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !std::isfinite(s)) throw DomainError("hurwitz_zeta requires s > 1");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("hurwitz_zeta requires a > 0");
  constexpr int kDirect = 50;
  constexpr int kCorrections = 10;

  // Direct terms summed smallest-first.
  double direct = 0.0;
  for (int n = kDirect - 1; n >= 0; --n) direct += std::pow(n + a, -s);

  const double w = kDirect + a;
  const double w_pow = std::pow(w, -s);
  double tail = w * w_pow / (s - 1.0) + 0.5 * w_pow;
  // B_{2j}/(2j)! s (s+1) ... (s+2j-2) w^(-s-2j+1)
  double rising = s;          // s (s+1) ... (s+2j-2)
  double factorial = 2.0;     // (2j)!
  double w_term = w_pow / w;  // w^(-s-2j+1)
  const double inv_w2 = 1.0 / (w * w);
  for (int j = 1; j <= kCorrections; ++j) {
    tail += bernoulli_even(2 * j) / factorial * rising * w_term;
    rising *= (s + 2 * j - 1) * (s + 2 * j);
    factorial *= (2.0 * j + 1) * (2.0 * j + 2);
    w_term *= inv_w2;
  }
  return direct + tail;
}

double riemann_zeta(double s) {
  if (!(s > 1.0)) throw DomainError("riemann_zeta requires s > 1");
  return hurwitz_zeta(s, 1.0);
}

double digamma(double x) {
  if (!std::isfinite(x)) throw DomainError("digamma of a non-finite argument");
  if (is_nonpositive_integer(x)) throw DomainError("digamma has a pole at non-positive integers");
  if (x < 0.0) {
    // psi(x) = psi(1 - x) - pi cot(pi x)
    return digamma(1.0 - x) - pi_cot_pi(x);
  }
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = 0.0;
  double power = inv2;
  for (std::size_t j = 1; j <= 10; ++j) {
    series += bernoulli_even(2 * j) / (2.0 * j) * power;
    power *= inv2;
  }
  return shift + std::log(x) - 0.5 / x - series;
}

double log_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_gamma of a non-finite argument");
  if (is_nonpositive_integer(x)) throw DomainError("log_gamma has a pole at non-positive integers");
  if (x < 0.5) {
    // Gamma(x) Gamma(1 - x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::fabs(sin_pi(x))) - log_gamma(1.0 - x);
  }
  double log_product = 0.0;
  double scale = 1.0;
  while (x < 10.0) {
    scale *= x;
    if (scale > 1e280) {
      log_product += std::log(scale);
      scale = 1.0;
    }
    x += 1.0;
  }
  log_product += std::log(scale);
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double power = inv;
  for (std::size_t j = 1; j <= 10; ++j) {
    series += bernoulli_even(2 * j) / (2.0 * j * (2.0 * j - 1.0)) * power;
    power *= inv2;
  }
  constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + series - log_product;
}

double pochhammer(double a, int n, PochhammerConvention convention) {
  if (n < 0) throw InvalidArgument("pochhammer index must be non-negative");
  double out = 1.0;
  switch (convention) {
    case PochhammerConvention::rising:
      for (int i = 0; i < n; ++i) out *= a + i;
      return out;
    case PochhammerConvention::falling:
      for (int i = 0; i < n; ++i) out *= a - i;
      return out;
    case PochhammerConvention::factorial_ratio: {
      if (std::trunc(a) != a || a < n) {
        throw InvalidArgument("factorial_ratio pochhammer needs an integer a >= n");
      }
      for (double f = a; f > n; f -= 1.0) out *= f;
      return out;
    }
  }
  return out;
}

}  // namespace fracsum::special
