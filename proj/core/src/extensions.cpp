#include "fracsum/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"
#include "fracsum/frac_sum.hpp"
#include "fracsum/special.hpp"

namespace fracsum {

double em_approximation(const SummandSpec& f, double x, double tol) {
  if (!f.body || !f.derivative) throw InvalidArgument("summand is empty");
  const double limit = resolve_limit(f);
  const auto r = engine::sum_series([&](double k) { return f.prime(k + x); },
                                    engine::SeriesOptions{tol, 1'000'000,
                                                          [&](double n) { return limit - f(n + x); }});
  if (!r.ok()) {
    throw ConvergenceError("derivative series at x = " + std::to_string(x) + " ended " +
                           std::string(to_string(r.verdict)));
  }
  return limit + (std::floor(x) - x) * f.prime(x) - r.value;
}

std::vector<double> make_grid(double x_min, double x_max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("grid step must be positive");
  if (!std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw InvalidArgument("grid bounds must be finite");
  }
  std::vector<double> grid;
  if (x_min > x_max) return grid;
  const auto count = static_cast<std::size_t>(std::floor((x_max - x_min) / step + 0.5)) + 1;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(x_min + static_cast<double>(i) * step);
  return grid;
}

std::vector<ApproxSample> em_approx_curve(const SummandSpec& f, double x_min, double x_max,
                                          double step, double tol) {
  std::vector<ApproxSample> out;
  for (const double x : make_grid(x_min, x_max, step)) {
    ApproxSample s;
    s.x = x;
    try {
      s.f_true = f(x);
      s.f_approx = em_approximation(f, x, tol);
      s.abs_err = std::fabs(s.f_true - s.f_approx);
    } catch (const Error& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      s.f_true = s.f_approx = s.abs_err = nan;
      s.error = e.what();
    }
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_antiderivative(const SummandSpec& f, const SummandSpec& F, double y) {
  if (!F.body || !F.derivative) throw InvalidArgument("antiderivative is empty");
  constexpr double kOffsets[] = {0.0, 0.37, 1.0, 2.21, 3.5};
  int checked = 0;
  for (const double d : kOffsets) {
    const double p = y + d;
    double want = 0.0;
    double got = 0.0;
    try {
      want = f(p);
      got = F.prime(p);
    } catch (const DomainError&) {
      continue;
    }
    ++checked;
    if (std::fabs(got - want) > 1e-8 * (1.0 + std::fabs(want))) {
      throw InvalidArgument("F' does not match f at k = " + std::to_string(p) + " (F' = " +
                            std::to_string(got) + ", f = " + std::to_string(want) + ")");
    }
  }
  if (checked < 3) throw InvalidArgument("could not evaluate F' and f at enough sample points");
}

InnerSum frac_sum_inner(const SummandSpec& f, double tol) {
  return [&f, tol](double lower, double upper) {
    FracSumRequest req;
    req.summand = f;
    req.lower_y = lower;
    req.upper_x = upper;
    req.tol = tol;
    const auto r = frac_sum(req);
    if (!r.ok()) {
      throw ConvergenceError("inner sum did not converge (" + std::string(to_string(r.verdict)) +
                             ")");
    }
    return r.value;
  };
}

EvalResult quad(const std::function<double(double)>& g, double a, double b, double tol) {
  const auto r = engine::integrate(g, a, b, tol);
  if (!r.ok()) throw ConvergenceError("quadrature of the inner sum did not converge");
  return r;
}

// Inner sums are evaluated a notch tighter than the outer quadrature.
constexpr double kInnerTolFactor = 1e-3;

}  // namespace

EvalResult sum_antiderivative(const InnerSum& inner, const SummandSpec& F, double y, double x,
                              double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!F.body) throw InvalidArgument("antiderivative is empty");
  if (x == y - 1.0) return {0.0, 0.0, 0, Verdict::converged};
  const auto g = [&](double t) { return inner(y, t); };
  const double q = tol / 10.0;
  const auto whole = quad(g, y - 1.0, x, q);
  const auto first = quad(g, y - 1.0, y, q);
  const double width = x - y + 1.0;
  EvalResult out;
  out.value = whole.value + (F(y) - first.value) * width;
  out.abs_error_estimate =
      whole.abs_error_estimate + std::fabs(width) * first.abs_error_estimate;
  out.terms_used = whole.terms_used + first.terms_used;
  out.verdict = Verdict::converged;
  return out;
}

EvalResult sum_antiderivative(const SummandSpec& f, const SummandSpec& F, double y, double x,
                              double tol) {
  check_antiderivative(f, F, y);
  return sum_antiderivative(frac_sum_inner(f, tol * kInnerTolFactor), F, y, x, tol);
}

EvalResult sum_antiderivative_lower(const InnerSum& inner, const SummandSpec& F, double y,
                                    double x, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!F.body) throw InvalidArgument("antiderivative is empty");
  if (x == y - 1.0) return {0.0, 0.0, 0, Verdict::converged};
  const auto g = [&](double t) { return inner(t, x); };
  const double q = tol / 10.0;
  const auto whole = quad(g, x + 1.0, y, q);
  const auto last = quad(g, x, x + 1.0, q);
  const double width = x - y + 1.0;
  EvalResult out;
  out.value = whole.value + (F(x) + last.value) * width;
  out.abs_error_estimate = whole.abs_error_estimate + std::fabs(width) * last.abs_error_estimate;
  out.terms_used = whole.terms_used + last.terms_used;
  out.verdict = Verdict::converged;
  return out;
}

EvalResult sum_antiderivative_lower(const SummandSpec& f, const SummandSpec& F, double y, double x,
                                    double tol) {
  check_antiderivative(f, F, x);
  return sum_antiderivative_lower(frac_sum_inner(f, tol * kInnerTolFactor), F, y, x, tol);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxFaulhaberDegree = 200;

// Row i holds a_p for P_i(n) = sum_{p=1}^{i+1} a_p n^p.
const std::vector<std::vector<double>>& faulhaber_table() {
  static const std::vector<std::vector<double>> table = [] {
    const special::BernoulliTable bernoulli(kMaxFaulhaberDegree);
    std::vector<std::vector<double>> rows;
    rows.reserve(kMaxFaulhaberDegree + 1);
    std::vector<special::Rational> binom{1};  // C(i+1, j) for the current row
    for (std::size_t i = 0; i <= kMaxFaulhaberDegree; ++i) {
      std::vector<special::Rational> next(i + 2);
      next.front() = next.back() = 1;
      for (std::size_t j = 1; j <= i; ++j) next[j] = binom[j - 1] + binom[j];
      binom = std::move(next);
      std::vector<double> row(i + 2, 0.0);
      for (std::size_t j = 0; j <= i; ++j) {
        const special::Rational a = binom[j] * bernoulli[j] / special::Rational(i + 1);
        row[i + 1 - j] = static_cast<double>(a);
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }();
  return table;
}

}  // namespace

double faulhaber_polynomial(std::size_t i, double n) {
  if (i > kMaxFaulhaberDegree) {
    throw InvalidArgument("Faulhaber degree above " + std::to_string(kMaxFaulhaberDegree));
  }
  const auto& row = faulhaber_table()[i];
  double out = 0.0;
  for (std::size_t p = row.size(); p-- > 0;) out = out * n + row[p];
  return out;
}

EvalResult faulhaber_sum(const PowerSeriesSpec& series, double y, double x, double tol) {
  if (series.coefficients.size() < series.truncation_J + 1) {
    throw InvalidArgument("power series needs coefficients c_0..c_J");
  }
  if (series.truncation_J > kMaxFaulhaberDegree) {
    throw InvalidArgument("truncation above " + std::to_string(kMaxFaulhaberDegree));
  }
  for (std::size_t i = 0; i <= series.truncation_J; ++i) {
    if (!std::isfinite(series.coefficients[i])) {
      throw InvalidArgument("power series coefficients must be finite");
    }
  }
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (x == y - 1.0) return {0.0, 0.0, 0, Verdict::converged};

  const double u = x - series.center_a;
  const double v = y - 1.0 - series.center_a;
  engine::CompensatedSum sum;
  std::vector<double> magnitudes;
  double abs_total = 0.0;
  std::size_t small_run = 0;
  for (std::size_t i = 0; i <= series.truncation_J; ++i) {
    const double c = series.coefficients[i];
    const double term = c == 0.0 ? 0.0 : c * (faulhaber_polynomial(i, u) - faulhaber_polynomial(i, v));
    if (!std::isfinite(term)) throw DomainError("power-series term overflowed");
    sum.add(term);
    abs_total += std::fabs(term);
    magnitudes.push_back(std::fabs(term));
    small_run = std::fabs(term) <= tol * std::fabs(sum.value()) ? small_run + 1 : 0;
    if (small_run >= 5) {
      const double tail = *std::max_element(magnitudes.end() - 5, magnitudes.end());
      return {sum.value(), tail, i + 1, Verdict::converged};
    }
  }

  const std::size_t n = magnitudes.size();
  if (n >= 6) {
    bool growing = magnitudes[n - 1] >= 10.0 * magnitudes[n - 6] && magnitudes[n - 6] > 0.0;
    for (std::size_t j = n - 5; j < n && growing; ++j) growing = magnitudes[j] > magnitudes[j - 1];
    if (growing) return {sum.value(), magnitudes.back(), n, Verdict::diverged};
  }
  // The truncated series is a polynomial, summed exactly up to rounding.
  const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * abs_total;
  return {sum.value(), rounding, n, Verdict::converged};
}

PowerSeriesSpec taylor_series(const expr::NodePtr& f, double a, std::size_t J) {
  if (!f) throw InvalidArgument("expression is empty");
  PowerSeriesSpec out;
  out.center_a = a;
  out.truncation_J = J;
  out.coefficients = expr::taylor_coefficients(*f, a, J);
  return out;
}

}  // namespace fracsum
