#pragma once

// Special functions used throughout the library. Real arguments only.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace fracsum::special {

using Rational = boost::multiprecision::cpp_rational;

/// Exact Bernoulli numbers B_0..B_n with the B_1 = +1/2 convention, i.e.
/// the ones satisfying sum_{j=0}^{m} C(m+1, j) B_j = m + 1.
class BernoulliTable {
 public:
  explicit BernoulliTable(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_.at(i); }
  double as_double(std::size_t i) const;
  const std::vector<Rational>& values() const noexcept { return values_; }

 private:
  std::vector<Rational> values_;
};

BernoulliTable bernoulli_numbers(std::size_t n);

/// B_{2j} as doubles for j = 0..20, from a shared immutable table.
double bernoulli_even(std::size_t two_j);

/// Riemann zeta for s > 1.
double riemann_zeta(double s);

/// sum_{n>=0} (n + a)^(-s) for s > 1, a > 0: 50 direct terms plus an
/// Euler-Maclaurin tail with 10 Bernoulli corrections.
double hurwitz_zeta(double s, double a);

/// psi(x) for x not in {0, -1, -2, ...}.
double digamma(double x);

/// log|Gamma(x)| for x not in {0, -1, -2, ...}.
double log_gamma(double x);

enum class PochhammerConvention {
  rising,           // a (a+1) ... (a+n-1)
  falling,          // a (a-1) ... (a-n+1)
  factorial_ratio,  // a! / n!  for integers n <= a: a (a-1) ... (n+1)
};

double pochhammer(double a, int n,
                  PochhammerConvention convention = PochhammerConvention::falling);

/// Euler-Mascheroni constant.
constexpr double euler_gamma() noexcept { return 0.57721566490153286060651209; }

/// sin(pi x) and cos(pi x) with exact argument reduction; both return an
/// exact zero at the zeros of the function.
double sin_pi(double x);
double cos_pi(double x);

/// pi cot(pi x).
double pi_cot_pi(double x);

bool is_nonpositive_integer(double x) noexcept;

}  // namespace fracsum::special
