#pragma once

// Numerical machinery: compensated accumulation, infinite series with tail
// estimation and Aitken acceleration, and adaptive Gauss-Kronrod quadrature.

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fracsum/eval_result.hpp"
#include "fracsum/summand.hpp"

namespace fracsum::engine {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

/// Iterated Aitken delta-squared over a run of partial sums. Returns the
/// deepest extrapolant; falls back to the last element where a second
/// difference vanishes.
double aitken_extrapolate(std::span<const double> partial_sums);

/// Wynn's epsilon algorithm over a run of partial sums; returns the last
/// entry of the deepest even column. Handles oscillating terms with
/// several periodic components, where Aitken stalls.
double wynn_epsilon(std::span<const double> partial_sums);

/// Running state of one series evaluation.
struct SeriesState {
  static constexpr std::size_t kRecentTerms = 8;
  static constexpr std::size_t kAccelWindow = 20;

  CompensatedSum partial_sum;
  std::size_t terms_used = 0;
  std::array<double, kRecentTerms> last_terms{};
  double tail_estimate = 0.0;
  std::vector<double> accel_table;  // last kAccelWindow partial sums, oldest first

  void push(double term);
  /// i = 0 is the most recent term.
  double recent(std::size_t i) const noexcept {
    return last_terms[(terms_used - 1 - i) % kRecentTerms];
  }
};

enum class TermPattern { monotone, alternating, irregular };

/// A series term as a function of a real index. Real (non-integer) indices
/// are only used for the integral tail of monotone series.
using TermFunction = std::function<double(double)>;

struct SeriesOptions {
  double tol = 1e-10;
  std::size_t max_terms = 1'000'000;
  /// Optional closed form of int_n^inf term(t) dt. When the caller knows
  /// the term's antiderivative structure (telescoping differences, exact
  /// derivatives) this avoids integrating rounding noise out to infinity.
  std::function<double(double)> tail_integral = {};
};

/// Estimates sum_{k>=1} term(k).
///
/// At checkpoints n = 16, 32, 64, ... the last 8 terms are classified:
///  - monotone (same sign, non-increasing magnitude, also between integers):
///    the remainder is the Euler-Maclaurin tail
///      int_n^inf term - term(n)/2 - term'(n)/12 + term'''(n)/720
///    and the error estimate is the change between checkpoints;
///  - alternating: plain partial sum once |term(n)| <= tol, otherwise
///    iterated Aitken over the last 12 partial sums;
///  - irregular: Wynn epsilon over the last 20 partial sums.
/// Diverged when |term| grows for 50 consecutive indices and ends above every
/// term seen before the run; no extrapolation is attempted while terms grow.
EvalResult sum_series(const TermFunction& term, const SeriesOptions& options = {});

/// Same as sum_series() but also exposes the final state.
EvalResult sum_series(const TermFunction& term, const SeriesOptions& options, SeriesState& state);

struct QuadratureOptions {
  double tol = 1e-10;
  std::size_t max_subdivisions = 2000;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature of g over [a, b]
/// (b < a allowed), targeting |error| <= tol (1 + |value|). Throws
/// DomainError on a non-finite sample; reports budget_exhausted when the
/// subdivision limit is hit.
EvalResult integrate(const std::function<double(double)>& g, double a, double b,
                     const QuadratureOptions& options = {});

inline EvalResult integrate(const std::function<double(double)>& g, double a, double b,
                            double tol) {
  return integrate(g, a, b, QuadratureOptions{tol, 2000});
}

/// int_a^inf g via t = a + u / (1 - u).
EvalResult integrate_to_infinity(const std::function<double(double)>& g, double a,
                                 const QuadratureOptions& options = {});

/// Tail integral for terms f(t + alpha) - f(t + beta) with f -> limit:
///   int_n^inf = int_{n+alpha}^{n+beta} f - limit (beta - alpha).
/// The returned callable refers to `f`, which must outlive it.
std::function<double(double)> difference_tail(const SummandSpec& f, double alpha, double beta,
                                              double limit);

/// Checks that sum_{k>=1} (f(k) - f(k+x)) lies between its values at
/// floor(x) and ceil(x), ordered by the summand's monotonicity.
/// Throws InvalidArgument when the hint is unknown.
bool bracket_check(const SummandSpec& f, double x, double tol);

}  // namespace fracsum::engine
