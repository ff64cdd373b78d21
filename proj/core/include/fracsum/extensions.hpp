#pragma once

// Function approximation from the derivative identity, summation of
// antiderivatives, and power-series (Faulhaber) continuation.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fracsum/eval_result.hpp"
#include "fracsum/expr.hpp"
#include "fracsum/summand.hpp"

namespace fracsum {

/// f(k) = sum_i coefficients[i] (k - center_a)^i, i = 0..truncation_J.
struct PowerSeriesSpec {
  double center_a = 0.0;
  std::vector<double> coefficients;
  std::size_t truncation_J = 0;
};

struct ApproxSample {
  double x = 0.0;
  double f_true = 0.0;
  double f_approx = 0.0;
  double abs_err = 0.0;
  /// Empty unless evaluating this grid point failed; the numbers are NaN then.
  std::string error;
};

/// f(x) ~ L + (floor(x) - x) f'(x) - sum_{k>=1} f'(k + x).
/// Throws ConvergenceError if the derivative series fails.
double em_approximation(const SummandSpec& f, double x, double tol = 1e-12);

/// Grid points min, min + step, ... up to max + step/2. Empty when
/// min > max; throws InvalidArgument for a non-positive step.
std::vector<double> make_grid(double x_min, double x_max, double step);

/// em_approximation() over make_grid(). Failing points are recorded in
/// ApproxSample::error and do not stop the sweep.
std::vector<ApproxSample> em_approx_curve(const SummandSpec& f, double x_min, double x_max,
                                          double step, double tol = 1e-12);

/// sum_{k=lower}^{upper} f(k) as a function of (lower, upper).
using InnerSum = std::function<double(double lower, double upper)>;

/// Sum of an antiderivative F of f with real bounds:
///   int_{y-1}^{x} S(y, t) dt + (F(y) - int_{y-1}^{y} S(y, t) dt) (x - y + 1)
/// with S(y, t) = sum_{k=y}^{t} f(k) from frac_sum. F' = f is checked at
/// five points (relative 1e-8) first; a mismatch throws InvalidArgument.
EvalResult sum_antiderivative(const SummandSpec& f, const SummandSpec& F, double y, double x,
                              double tol = 1e-10);

/// Same formula with a caller-supplied S, e.g. a closed form known from an
/// earlier application. No F' = f check is possible here.
EvalResult sum_antiderivative(const InnerSum& inner, const SummandSpec& F, double y, double x,
                              double tol = 1e-10);

/// The route through the lower bound:
///   int_{x+1}^{y} S(t, x) dt + (F(x) + int_{x}^{x+1} S(t, x) dt) (x - y + 1).
EvalResult sum_antiderivative_lower(const SummandSpec& f, const SummandSpec& F, double y, double x,
                                    double tol = 1e-10);

EvalResult sum_antiderivative_lower(const InnerSum& inner, const SummandSpec& F, double y,
                                    double x, double tol = 1e-10);

/// sum_{k=1}^{n} k^i as the Bernoulli polynomial
///   (1/(i+1)) sum_{j=0}^{i} C(i+1, j) B_j n^(i+1-j),   B_1 = +1/2,
/// valid for real n. Supports i <= 200.
double faulhaber_polynomial(std::size_t i, double n);

/// sum_{k=y}^{x} of the power series, term by term:
///   sum_i c_i (P_i(x - a) - P_i(y - 1 - a))
/// with P_i from faulhaber_polynomial(). Stops once 5 consecutive terms are
/// below tol |partial|. Reaching the truncation sums the polynomial
/// exactly, unless the last terms grew 10x over 5 indices: then the series
/// is reported `diverged`.
EvalResult faulhaber_sum(const PowerSeriesSpec& series, double y, double x, double tol = 1e-12);

/// c_i = f^(i)(a) / i! for i = 0..J.
PowerSeriesSpec taylor_series(const expr::NodePtr& f, double a, std::size_t J);

}  // namespace fracsum
