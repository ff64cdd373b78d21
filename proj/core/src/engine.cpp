#include "fracsum/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fracsum/error.hpp"

namespace fracsum {

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::converged: return "converged";
    case Verdict::accelerated: return "accelerated";
    case Verdict::bracketed: return "bracketed";
    case Verdict::budget_exhausted: return "budget-exhausted";
    case Verdict::diverged: return "diverged";
  }
  return "unknown";
}

}  // namespace fracsum

namespace fracsum::engine {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kAitkenWindow = 12;
}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double aitken_extrapolate(std::span<const double> partial_sums) {
  if (partial_sums.empty()) return 0.0;
  std::vector<double> cur(partial_sums.begin(), partial_sums.end());
  while (cur.size() >= 3) {
    std::vector<double> next;
    next.reserve(cur.size() - 2);
    for (std::size_t i = 0; i + 2 < cur.size(); ++i) {
      const double d1 = cur[i + 1] - cur[i];
      const double d2 = cur[i + 2] - cur[i + 1];
      const double den = d2 - d1;
      const double correction = d2 * d2 / den;
      if (den == 0.0 || std::fabs(den) <= 64.0 * kEps * (std::fabs(d1) + std::fabs(d2)) ||
          !std::isfinite(correction)) {
        next.push_back(cur[i + 2]);
      } else {
        next.push_back(cur[i + 2] - correction);
      }
    }
    cur = std::move(next);
  }
  return cur.back();
}

double wynn_epsilon(std::span<const double> partial_sums) {
  if (partial_sums.empty()) return 0.0;
  // Columns eps_{-1} = 0 and eps_0 = partial sums; even columns hold the
  // Shanks transforms.
  std::vector<double> prev(partial_sums.size() + 1, 0.0);
  std::vector<double> cur(partial_sums.begin(), partial_sums.end());
  double best = cur.back();
  for (std::size_t col = 1; cur.size() >= 2; ++col) {
    std::vector<double> next(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0 || std::fabs(diff) <= 64.0 * kEps * std::fabs(cur[i + 1])) {
        // Converged to rounding: the previous even column is final.
        return col % 2 == 1 ? cur[i + 1] : best;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (col % 2 == 0) {
      if (!std::isfinite(next.back())) return best;
      best = next.back();
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return best;
}

void SeriesState::push(double term) {
  partial_sum.add(term);
  last_terms[terms_used % kRecentTerms] = term;
  ++terms_used;
  accel_table.push_back(partial_sum.value());
  if (accel_table.size() > kAccelWindow) accel_table.erase(accel_table.begin());
}

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

TermPattern classify(const SeriesState& st, const TermFunction& term) {
  const std::size_t count = std::min(st.terms_used, SeriesState::kRecentTerms);
  if (count < 3) return TermPattern::irregular;

  bool alternating = true;
  bool monotone = true;
  int common_sign = 0;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = st.recent(i);
    const int s = sign_of(t);
    if (s != 0) {
      if (common_sign == 0) common_sign = s;
      if (s != common_sign) monotone = false;
    }
    if (i + 1 < count) {
      const double older = st.recent(i + 1);
      if (sign_of(t) == 0 || sign_of(t) != -sign_of(older)) alternating = false;
      if (std::fabs(t) > std::fabs(older)) monotone = false;
    }
  }
  if (alternating) return TermPattern::alternating;
  if (!monotone) return TermPattern::irregular;

  // The integral tail also needs the term to behave between integers.
  const double n = static_cast<double>(st.terms_used);
  try {
    const double newest = st.recent(0);
    const double older = st.recent(1);
    const double mid = term(n - 0.5);
    const double lo = std::min(std::fabs(newest), std::fabs(older));
    const double hi = std::max(std::fabs(newest), std::fabs(older));
    const double slack = 8.0 * kEps * hi;
    if (common_sign != 0 && sign_of(mid) != common_sign && mid != 0.0) {
      return TermPattern::irregular;
    }
    if (std::fabs(mid) < lo - slack || std::fabs(mid) > hi + slack) return TermPattern::irregular;
  } catch (const DomainError&) {
    return TermPattern::irregular;
  }
  return TermPattern::monotone;
}

double aitken_window(const SeriesState& st) {
  const std::size_t n = std::min(st.accel_table.size(), kAitkenWindow);
  return aitken_extrapolate(std::span<const double>(st.accel_table).last(n));
}

struct TailEstimate {
  double remainder = 0.0;
  double integral = 0.0;
  double quadrature_error = 0.0;
};

// int_m^inf term, assuming term(t) ~ C t^-p beyond m. Terms far out are
// dominated by rounding noise in many summands, so the power law is fitted
// at m/4, m/2, m instead of sampling towards infinity.
std::optional<TailEstimate> power_law_tail(const TermFunction& term, double m, double tol) {
  const double a = term(0.25 * m), b = term(0.5 * m), c = term(m);
  if (c == 0.0 && b == 0.0) return TailEstimate{};
  const bool same_sign = sign_of(a) == sign_of(b) && sign_of(b) == sign_of(c);
  if (same_sign && std::fabs(b) < std::fabs(a) && std::fabs(c) < std::fabs(b)) {
    const double p_old = std::log2(a / b);
    const double p_new = std::log2(b / c);
    if (p_new > 1.05 && std::fabs(p_new - p_old) < 0.1 * p_new) {
      TailEstimate out;
      out.integral = m * c / (p_new - 1.0);
      out.quadrature_error = std::fabs(out.integral - m * c / (p_old - 1.0));
      return out;
    }
  }
  if (std::fabs(m * c) <= 1e-3 * tol && std::fabs(m * b) <= 1e-2 * tol) {
    // Faster than any power law (e.g. exponential decay); nothing left.
    TailEstimate out;
    out.quadrature_error = std::fabs(m * b);
    return out;
  }
  return std::nullopt;
}

// Euler-Maclaurin remainder sum_{k>n} term(k).
std::optional<TailEstimate> monotone_tail(const TermFunction& term, double n, double newest,
                                          const SeriesOptions& options) {
  const double tol = options.tol;
  try {
    const QuadratureOptions quad{tol * 0.1, 2000};
    double integral = 0.0;
    double quad_error = 0.0;
    const auto whole = options.tail_integral
                           ? EvalResult{options.tail_integral(n), 0.0, 0, Verdict::converged}
                           : integrate_to_infinity(term, n, quad);
    if (whole.ok() && std::isfinite(whole.value)) {
      integral = whole.value;
      quad_error = whole.abs_error_estimate;
    } else {
      const double m = 64.0 * n;
      const auto near = integrate(term, n, m, quad);
      const auto far = power_law_tail(term, m, tol);
      if (!far || !std::isfinite(near.value)) return std::nullopt;
      integral = near.value + far->integral;
      quad_error = near.abs_error_estimate + far->quadrature_error;
    }
    const double h = 0.5;
    const double tp1 = term(n + h), tm1 = term(n - h);
    const double tp2 = term(n + 2 * h), tm2 = term(n - 2 * h);
    const double tph = term(n + 0.5 * h), tmh = term(n - 0.5 * h);
    const double d_h = (tp1 - tm1) / (2 * h);
    const double d_half = (tph - tmh) / h;
    const double first = (4.0 * d_half - d_h) / 3.0;
    const double third = (tp2 - 2.0 * tp1 + 2.0 * tm1 - tm2) / (2.0 * h * h * h);
    TailEstimate out;
    out.integral = integral;
    out.quadrature_error = quad_error;
    out.remainder = out.integral - 0.5 * newest - first / 12.0 + third / 720.0;
    return out;
  } catch (const DomainError&) {
    return std::nullopt;
  } catch (const ConvergenceError&) {
    return std::nullopt;
  }
}

}  // namespace

EvalResult sum_series(const TermFunction& term, const SeriesOptions& options) {
  SeriesState state;
  return sum_series(term, options, state);
}

EvalResult sum_series(const TermFunction& term, const SeriesOptions& options, SeriesState& st) {
  if (!(options.tol > 0.0)) throw InvalidArgument("series tolerance must be positive");
  if (options.max_terms == 0) throw InvalidArgument("series term budget must be positive");
  st = SeriesState{};

  std::size_t next_checkpoint = 16;
  std::optional<double> prev_estimate;
  TermPattern prev_pattern = TermPattern::irregular;
  double best_estimate = 0.0;
  double best_error = kInf;
  std::size_t growth_run = 0;
  double prev_abs = kInf;
  double peak = 0.0;             // largest |term| so far
  double peak_before_run = 0.0;  // largest |term| before the current growth run

  for (std::size_t k = 1; k <= options.max_terms; ++k) {
    const double t = term(static_cast<double>(k));
    if (!std::isfinite(t)) {
      throw DomainError("non-finite series term at index " + std::to_string(k));
    }
    st.push(t);

    const double abs_t = std::fabs(t);
    if (abs_t > prev_abs && abs_t > 0.0) {
      if (growth_run++ == 0) peak_before_run = peak;
    } else {
      growth_run = 0;
    }
    prev_abs = abs_t;
    peak = std::max(peak, abs_t);
    // A long rise out of a near-zero crossing (a/k + b/k^2 with ab < 0) is
    // not divergence; the run must also climb past every earlier term.
    if (growth_run >= 50 && abs_t > peak_before_run) {
      st.tail_estimate = kInf;
      return {st.partial_sum.value(), kInf, k, Verdict::diverged};
    }

    if (k != next_checkpoint && k != options.max_terms) continue;
    if (k == next_checkpoint) next_checkpoint *= 2;
    // Extrapolating a growing run would sum a divergent series to its antilimit.
    if (growth_run >= SeriesState::kRecentTerms) continue;

    const double plain = st.partial_sum.value();
    const TermPattern pattern = classify(st, term);
    double estimate = plain;
    double error = kInf;
    Verdict verdict = Verdict::converged;

    if (pattern == TermPattern::monotone) {
      const auto tail = monotone_tail(term, static_cast<double>(k), t, options);
      if (tail) {
        estimate = plain + tail->remainder;
        st.tail_estimate = std::fabs(tail->integral);
        if (prev_estimate && prev_pattern == TermPattern::monotone) {
          error = std::fabs(estimate - *prev_estimate) + tail->quadrature_error;
        }
      } else {
        estimate = wynn_epsilon(st.accel_table);
        st.tail_estimate = std::fabs(estimate - plain);
        verdict = Verdict::accelerated;
        if (prev_estimate && prev_pattern == TermPattern::irregular) {
          error = std::fabs(estimate - *prev_estimate);
        }
        prev_pattern = TermPattern::irregular;
        prev_estimate = estimate;
        if (error <= best_error) {
          best_error = error;
          best_estimate = estimate;
        }
        if (error <= options.tol) return {estimate, error, k, verdict};
        continue;
      }
    } else if (pattern == TermPattern::alternating && abs_t <= options.tol) {
      st.tail_estimate = abs_t;
      return {plain, abs_t, k, Verdict::converged};
    } else {
      estimate = pattern == TermPattern::alternating ? aitken_window(st) : wynn_epsilon(st.accel_table);
      st.tail_estimate = pattern == TermPattern::alternating ? abs_t : std::fabs(estimate - plain);
      verdict = Verdict::accelerated;
      if (prev_estimate && prev_pattern == pattern) error = std::fabs(estimate - *prev_estimate);
    }

    prev_estimate = estimate;
    prev_pattern = pattern;
    if (error <= best_error || !std::isfinite(best_error)) {
      best_error = error;
      best_estimate = estimate;
    }
    if (error <= options.tol) return {estimate, error, k, verdict};
  }

  if (!std::isfinite(best_error)) best_estimate = st.partial_sum.value();
  return {best_estimate, best_error, st.terms_used, Verdict::budget_exhausted};
}

// ---------------------------------------------------------------------------
// Quadrature

namespace {

// 21-point Kronrod nodes and weights with the embedded 10-point Gauss rule
// (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980223162, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

double sample(const std::function<double(double)>& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) {
    throw DomainError("non-finite integrand value at t = " + std::to_string(x));
  }
  return v;
}

Panel kronrod21(const std::function<double(double)>& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::fabs(half);

  std::array<double, 10> f_lo{};
  std::array<double, 10> f_hi{};
  const double f_center = sample(g, center);
  double res_k = kWgk[10] * f_center;
  double res_g = 0.0;
  double res_abs = std::fabs(res_k);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f_lo[j] = sample(g, center - dx);
    f_hi[j] = sample(g, center + dx);
    const double pair = f_lo[j] + f_hi[j];
    res_k += kWgk[j] * pair;
    res_abs += kWgk[j] * (std::fabs(f_lo[j]) + std::fabs(f_hi[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::fabs(f_center - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::fabs(f_lo[j] - mean) + std::fabs(f_hi[j] - mean));
  }
  res_asc *= abs_half;
  res_abs *= abs_half;

  double err = std::fabs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return {a, b, res_k * half, err};
}

}  // namespace

EvalResult integrate(const std::function<double(double)>& g, double a, double b,
                     const QuadratureOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("quadrature bounds must be finite");
  if (a == b) return {0.0, 0.0, 0, Verdict::converged};

  std::vector<Panel> panels{kronrod21(g, a, b)};
  std::size_t evaluations = 21;
  for (;;) {
    CompensatedSum total;
    double total_error = 0.0;
    for (const auto& p : panels) {
      total.add(p.value);
      total_error += p.error;
    }
    const double value = total.value();
    if (total_error <= options.tol * (1.0 + std::fabs(value))) {
      return {value, total_error, evaluations, Verdict::converged};
    }
    if (panels.size() >= options.max_subdivisions) {
      return {value, total_error, evaluations, Verdict::budget_exhausted};
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& x, const Panel& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    if (mid == worst->a || mid == worst->b) {
      return {value, total_error, evaluations, Verdict::budget_exhausted};
    }
    const Panel left = kronrod21(g, worst->a, mid);
    const Panel right = kronrod21(g, mid, worst->b);
    evaluations += 42;
    *worst = left;
    panels.push_back(right);
  }
}

EvalResult integrate_to_infinity(const std::function<double(double)>& g, double a,
                                 const QuadratureOptions& options) {
  auto mapped = [&g, a](double u) {
    const double one_minus = 1.0 - u;
    const double t = a + u / one_minus;
    if (!std::isfinite(t)) return 0.0;
    return g(t) / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, options);
}

// ---------------------------------------------------------------------------

std::function<double(double)> difference_tail(const SummandSpec& f, double alpha, double beta,
                                              double limit) {
  return [&f, alpha, beta, limit](double n) {
    const auto r = integrate([&f](double t) { return f(t); }, n + alpha, n + beta, 1e-14);
    return r.value - limit * (beta - alpha);
  };
}

bool bracket_check(const SummandSpec& f, double x, double tol) {
  if (f.monotonic_hint == Monotonicity::unknown) {
    throw InvalidArgument("bracket_check needs a monotonic summand");
  }
  const double limit = resolve_limit(f);
  auto series_at = [&](double shift) {
    if (shift == 0.0) return 0.0;
    const auto r = sum_series([&](double k) { return f(k) - f(k + shift); },
                              SeriesOptions{tol, 1'000'000, difference_tail(f, 0.0, shift, limit)});
    if (r.verdict == Verdict::diverged) throw ConvergenceError("bracket series diverged");
    return r.value;
  };
  const double lo = series_at(std::floor(x));
  const double mid = series_at(x);
  const double hi = series_at(std::ceil(x));
  const double slack = 2.0 * tol;
  if (f.monotonic_hint == Monotonicity::decreasing) {
    return lo <= mid + slack && mid <= hi + slack;
  }
  return hi <= mid + slack && mid <= lo + slack;
}

}  // namespace fracsum::engine
