#include "fracsum/frac_sum.hpp"

#include <cmath>
#include <string>

#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"

namespace fracsum {

namespace {

void validate(const FracSumRequest& req) {
  if (!req.summand.body) throw InvalidArgument("request has no summand");
  if (!(req.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (req.max_terms == 0) throw InvalidArgument("term budget must be positive");
  if (!std::isfinite(req.lower_y) || !std::isfinite(req.upper_x)) {
    throw InvalidArgument("bounds must be finite");
  }
}

bool is_empty_range(double y, double x) { return x == y - 1.0; }

// Value of sum_{k>=1} (h(k) - h(k+z)) for h(k) = f(k + y - 1).
double shifted_series(const SummandSpec& f, double y, double z, double tol, std::size_t budget) {
  if (z == 0.0) return 0.0;
  const auto r = engine::sum_series(
      [&](double k) { return f(k + y - 1.0) - f(k + y - 1.0 + z); },
      engine::SeriesOptions{tol, budget,
                            engine::difference_tail(f, y - 1.0, y - 1.0 + z, resolve_limit(f))});
  if (r.verdict == Verdict::diverged) throw ConvergenceError("bracketing series diverged");
  return r.value;
}

// Monotone summands: the value at z lies between the values at floor(z)
// and ceil(z). Returns the bracket width, or a negative number on failure.
double bracket_width(const FracSumRequest& req, double series_value) {
  const auto& f = req.summand;
  const double z = req.upper_x - req.lower_y + 1.0;
  const double lo = shifted_series(f, req.lower_y, std::floor(z), req.tol, req.max_terms);
  const double hi = shifted_series(f, req.lower_y, std::ceil(z), req.tol, req.max_terms);
  const double a = std::min(lo, hi);
  const double b = std::max(lo, hi);
  const bool ordered = f.monotonic_hint == Monotonicity::decreasing ? lo <= hi : hi <= lo;
  if (!ordered || series_value < a - req.tol || series_value > b + req.tol) return -1.0;
  return b - a;
}

}  // namespace

EvalResult continuation_series(const FracSumRequest& req) {
  validate(req);
  const auto& f = req.summand;
  const double y = req.lower_y;
  const double x = req.upper_x;
  return engine::sum_series(
      [&](double k) { return f(k + y - 1.0) - f(k + x); },
      engine::SeriesOptions{req.tol, req.max_terms,
                            engine::difference_tail(f, y - 1.0, x, resolve_limit(f))});
}

EvalResult frac_sum(const FracSumRequest& req) {
  validate(req);
  const double y = req.lower_y;
  const double x = req.upper_x;
  if (is_empty_range(y, x)) return {0.0, 0.0, 0, Verdict::converged};

  if (req.use_reflection && y > x + 1.0) {
    FracSumRequest mirrored = req;
    mirrored.lower_y = x + 1.0;
    mirrored.upper_x = y - 1.0;
    auto r = frac_sum(mirrored);
    r.value = -r.value;
    return r;
  }

  const double limit = resolve_limit(req.summand);
  auto series = continuation_series(req);
  if (series.verdict == Verdict::diverged) {
    throw ConvergenceError("continuation series diverged");
  }
  if (!series.ok() && req.summand.monotonic_hint != Monotonicity::unknown) {
    const double width = bracket_width(req, series.value);
    if (width >= 0.0) {
      series.verdict = Verdict::bracketed;
      series.abs_error_estimate = std::min(series.abs_error_estimate, width);
    }
  }
  series.value += limit * (x - y + 1.0);
  return series;
}

SummandSpec log_summand(const SummandSpec& f) {
  SummandSpec g;
  g.body = expr::call(expr::Function::ln, f.body);
  g.derivative = expr::differentiate(g.body);
  const double limit = resolve_limit(f);
  if (!(limit > 0.0)) throw DomainError("product continuation needs a positive limit L");
  g.limit = std::log(limit);
  g.monotonic_hint = f.monotonic_hint;
  return g;
}

EvalResult frac_prod(const FracSumRequest& req) {
  validate(req);
  if (is_empty_range(req.lower_y, req.upper_x)) return {1.0, 0.0, 0, Verdict::converged};
  FracSumRequest log_req = req;
  log_req.summand = log_summand(req.summand);
  EvalResult r;
  try {
    r = frac_sum(log_req);
  } catch (const DomainError& e) {
    throw DomainError(std::string("product factor outside (0, inf): ") + e.what());
  }
  const double value = std::exp(r.value);
  if (!std::isfinite(value)) throw DomainError("product overflows double range");
  r.abs_error_estimate *= value;
  r.value = value;
  return r;
}

double direct_sum(const SummandSpec& f, long long y, long long x) {
  if (x < y - 1) throw InvalidArgument("direct_sum needs x >= y - 1");
  engine::CompensatedSum acc;
  for (long long k = y; k <= x; ++k) acc.add(f(static_cast<double>(k)));
  return acc.value();
}

double direct_product(const SummandSpec& f, long long y, long long x) {
  if (x < y - 1) throw InvalidArgument("direct_product needs x >= y - 1");
  double out = 1.0;
  for (long long k = y; k <= x; ++k) out *= f(static_cast<double>(k));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PropertyName {
  Property property;
  std::string_view id;
};

constexpr PropertyName kPropertyNames[] = {
    {Property::empty_sum, "empty-sum"},
    {Property::empty_prod, "empty-prod"},
    {Property::recurrence_low, "recurrence-low"},
    {Property::recurrence_high, "recurrence-high"},
    {Property::split, "split"},
    {Property::reflection, "reflection"},
    {Property::prod_recurrence_low, "prod-recurrence-low"},
    {Property::prod_recurrence_high, "prod-recurrence-high"},
    {Property::prod_split, "prod-split"},
    {Property::prod_reflection, "prod-reflection"},
};

}  // namespace

Property parse_property(std::string_view id) {
  for (const auto& entry : kPropertyNames) {
    if (entry.id == id) return entry.property;
  }
  throw InvalidArgument("unknown property '" + std::string(id) + "'");
}

std::string_view to_string(Property property) noexcept {
  for (const auto& entry : kPropertyNames) {
    if (entry.property == property) return entry.id;
  }
  return "unknown";
}

double check_property(Property property, const FracSumRequest& req, const PropertyParams& aux) {
  const double y = req.lower_y;
  const double x = req.upper_x;
  const double c = aux.split_point;
  const auto& f = req.summand;

  auto with = [&](double lo, double hi, bool reflect = true) {
    FracSumRequest r = req;
    r.lower_y = lo;
    r.upper_x = hi;
    r.use_reflection = reflect;
    return r;
  };
  auto S = [&](double lo, double hi, bool reflect = true) {
    return frac_sum(with(lo, hi, reflect)).value;
  };
  auto P = [&](double lo, double hi, bool reflect = true) {
    return frac_prod(with(lo, hi, reflect)).value;
  };

  switch (property) {
    case Property::empty_sum:
      return std::fabs(S(y, y - 1.0));
    case Property::empty_prod:
      return std::fabs(P(y, y - 1.0) - 1.0);
    case Property::recurrence_low:
      return std::fabs(S(y, x) - (f(y) + S(y + 1.0, x)));
    case Property::recurrence_high:
      return std::fabs(S(y, x) - (f(x) + S(y, x - 1.0)));
    case Property::split:
      return std::fabs(S(y, x) - (S(y, c) + S(c + 1.0, x)));
    case Property::reflection:
      return std::fabs(S(y, x, false) + S(x + 1.0, y - 1.0, false));
    case Property::prod_recurrence_low:
      return std::fabs(P(y, x) / (f(y) * P(y + 1.0, x)) - 1.0);
    case Property::prod_recurrence_high:
      return std::fabs(P(y, x) / (f(x) * P(y, x - 1.0)) - 1.0);
    case Property::prod_split:
      return std::fabs(P(y, x) / (P(y, c) * P(c + 1.0, x)) - 1.0);
    case Property::prod_reflection:
      return std::fabs(P(y, x, false) * P(x + 1.0, y - 1.0, false) - 1.0);
  }
  throw InvalidArgument("unknown property");
}

}  // namespace fracsum
