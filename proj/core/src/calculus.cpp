#include "fracsum/calculus.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <string>

#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"
#include "fracsum/special.hpp"

namespace fracsum {

Bound parse_bound(std::string_view id) {
  if (id == "upper") return Bound::upper;
  if (id == "lower") return Bound::lower;
  throw InvalidArgument("bound must be 'upper' or 'lower', got '" + std::string(id) + "'");
}

std::string_view to_string(Bound bound) noexcept {
  return bound == Bound::upper ? "upper" : "lower";
}

double TaylorExpansion::evaluate(double at) const {
  const double u = at - center;
  double out = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) out = out * u + *it;
  return out;
}

bool TaylorExpansion::within_radius(double at) const noexcept {
  return std::fabs(at - center) < 1.0;
}

namespace {

using expr::BinaryOp;
using expr::Node;
using expr::NodeKind;

EvalResult checked_series(const engine::TermFunction& term, double tol, std::size_t budget,
                          const char* what, std::function<double(double)> tail = {}) {
  auto r = engine::sum_series(term, engine::SeriesOptions{tol, budget, std::move(tail)});
  if (r.verdict == Verdict::diverged) throw ConvergenceError(std::string(what) + " diverged");
  return r;
}

void require_summand(const FracSumRequest& req) {
  if (!req.summand.body || !req.summand.derivative) {
    throw InvalidArgument("request has no summand");
  }
  if (!(req.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
}

// --- c k^(-m) recognition -------------------------------------------------

struct InversePower {
  double scale;
  double m;
};

std::optional<double> constant_value(const Node& n) {
  if (n.depends_on_k()) return std::nullopt;
  try {
    return expr::evaluate(n, 0.0);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

// k^p with constant p, returning p.
std::optional<double> power_of_k(const Node& n) {
  if (n.kind() == NodeKind::variable) return 1.0;
  if (n.kind() == NodeKind::binary && n.op() == BinaryOp::pow &&
      n.child(0)->kind() == NodeKind::variable) {
    return constant_value(*n.child(1));
  }
  return std::nullopt;
}

std::optional<InversePower> match_inverse_power(const Node& n) {
  if (n.kind() == NodeKind::unary) {
    auto inner = match_inverse_power(*n.child(0));
    if (inner) inner->scale = -inner->scale;
    return inner;
  }
  if (auto p = power_of_k(n); p && *p < 0.0) return InversePower{1.0, -*p};
  if (n.kind() != NodeKind::binary) return std::nullopt;
  if (n.op() == BinaryOp::div) {
    const auto c = constant_value(*n.child(0));
    const auto p = power_of_k(*n.child(1));
    if (c && p && *p > 0.0) return InversePower{*c, *p};
    return std::nullopt;
  }
  if (n.op() == BinaryOp::mul) {
    for (int side = 0; side < 2; ++side) {
      const auto c = constant_value(*n.child(side));
      if (!c) continue;
      auto inner = match_inverse_power(*n.child(1 - side));
      if (inner) inner->scale *= *c;
      return inner;
    }
  }
  return std::nullopt;
}

double factorial(std::size_t j) {
  double out = 1.0;
  for (std::size_t i = 2; i <= j; ++i) out *= static_cast<double>(i);
  return out;
}

// S_j(c) = sum_{n>=0} f^(j)(n + c) for j = 1..order.
std::vector<double> derivative_sums(const SummandSpec& f, double c, std::size_t order,
                                    double tol) {
  std::vector<double> sums(order + 1, 0.0);
  const auto power = match_inverse_power(*f.body);
  if (power && c > 0.0) {
    // d^j/dt^j t^(-m) = (-1)^j m (m+1) ... (m+j-1) t^(-m-j)
    double rising = 1.0;
    for (std::size_t j = 1; j <= order; ++j) {
      rising *= power->m + static_cast<double>(j) - 1.0;
      const double sign = j % 2 == 0 ? 1.0 : -1.0;
      sums[j] = power->scale * sign * rising *
                special::hurwitz_zeta(power->m + static_cast<double>(j), c);
    }
    return sums;
  }
  const double limit = resolve_limit(f);
  const Node& body = *f.body;
  // Derivatives of every order come from one Taylor jet per point;
  // f^(j)(t) = j! * jet[j].
  for (std::size_t j = 1; j <= order; ++j) {
    const double scale = factorial(j);
    const double prev_scale = factorial(j - 1);
    // f^(j-1) tends to L for j = 1 and to 0 beyond.
    const double prev_limit = j == 1 ? limit : 0.0;
    const auto r = engine::sum_series(
        [&](double k) { return scale * expr::taylor_coefficients(body, k - 1.0 + c, j)[j]; },
        engine::SeriesOptions{tol, 1'000'000, [&](double n) {
                                const auto w = expr::taylor_coefficients(body, n - 1.0 + c, j - 1);
                                return prev_limit - prev_scale * w[j - 1];
                              }});
    if (!r.ok()) {
      throw ConvergenceError("inner series for derivative order " + std::to_string(j) +
                             " did not converge (" + std::string(to_string(r.verdict)) + ")");
    }
    sums[j] = r.value;
  }
  return sums;
}

}  // namespace

EvalResult d_upper(const FracSumRequest& req) {
  require_summand(req);
  const auto& f = req.summand;
  const double x = req.upper_x;
  const double limit = resolve_limit(f);
  // int_n^inf f'(t + x) dt = L - f(n + x)
  auto r = checked_series([&](double k) { return f.prime(k + x); }, req.tol, req.max_terms,
                          "derivative series", [&](double n) { return limit - f(n + x); });
  r.value = limit - r.value;
  return r;
}

EvalResult d_lower(const FracSumRequest& req) {
  require_summand(req);
  const auto& f = req.summand;
  const double y = req.lower_y;
  const double limit = resolve_limit(f);
  auto r = checked_series([&](double k) { return f.prime(k - 1.0 + y); }, req.tol,
                          req.max_terms, "derivative series",
                          [&](double n) { return limit - f(n - 1.0 + y); });
  r.value -= limit;
  return r;
}

EvalResult d_prod(const FracSumRequest& req, Bound wrt) {
  require_summand(req);
  FracSumRequest log_req = req;
  log_req.summand = log_summand(req.summand);
  const EvalResult log_derivative = wrt == Bound::upper ? d_upper(log_req) : d_lower(log_req);
  const EvalResult product = frac_prod(req);
  EvalResult out = log_derivative;
  out.value = log_derivative.value * product.value;
  out.abs_error_estimate = std::fabs(product.value) * log_derivative.abs_error_estimate +
                           std::fabs(log_derivative.value) * product.abs_error_estimate;
  out.terms_used += product.terms_used;
  if (!product.ok()) out.verdict = product.verdict;
  return out;
}

TaylorExpansion taylor_upper(const SummandSpec& f, double y, std::size_t order, double tol) {
  if (!f.body || !f.derivative) throw InvalidArgument("summand is empty");
  TaylorExpansion out;
  out.center = y - 1.0;
  out.order = order;
  out.wrt = Bound::upper;
  out.coefficients.assign(order + 1, 0.0);
  if (order == 0) return out;
  const auto sums = derivative_sums(f, y, order, tol);
  out.coefficients[1] = resolve_limit(f) - sums[1];
  for (std::size_t j = 2; j <= order; ++j) out.coefficients[j] = -sums[j] / factorial(j);
  return out;
}

TaylorExpansion taylor_lower(const SummandSpec& f, double x, std::size_t order, double tol) {
  if (!f.body || !f.derivative) throw InvalidArgument("summand is empty");
  TaylorExpansion out;
  out.center = x + 1.0;
  out.order = order;
  out.wrt = Bound::lower;
  out.coefficients.assign(order + 1, 0.0);
  if (order == 0) return out;
  const auto sums = derivative_sums(f, x + 1.0, order, tol);
  out.coefficients[1] = -resolve_limit(f) + sums[1];
  for (std::size_t j = 2; j <= order; ++j) out.coefficients[j] = sums[j] / factorial(j);
  return out;
}

namespace {

// Per-term quadrature is kept well below the series tolerance since its
// error accumulates over every term.
constexpr double kTermQuadTol = 1e-14;

double integral_of(const SummandSpec& f, double from, double to) {
  const auto r = engine::integrate([&](double t) { return f(t); }, from, to, kTermQuadTol);
  return r.value;
}

}  // namespace

EvalResult integrate_upper(const SummandSpec& f, double y, double a, double x, double tol) {
  if (!f.body) throw InvalidArgument("summand is empty");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (a == x) return {0.0, 0.0, 0, Verdict::converged};
  const double limit = resolve_limit(f);
  auto r = checked_series(
      [&](double k) { return f(k + y - 1.0) * (x - a) - integral_of(f, k + a, k + x); }, tol,
      1'000'000, "integrated series");
  const double u = x - y + 1.0;
  const double v = a - y + 1.0;
  r.value += limit * (u * u - v * v) / 2.0;
  return r;
}

EvalResult integrate_lower(const SummandSpec& f, double x, double a, double y, double tol) {
  if (!f.body) throw InvalidArgument("summand is empty");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (a == y) return {0.0, 0.0, 0, Verdict::converged};
  const double limit = resolve_limit(f);
  auto r = checked_series(
      [&](double k) {
        const double n = k - 1.0;
        return integral_of(f, n + a, n + y) - f(n + x + 1.0) * (y - a);
      },
      tol, 1'000'000, "integrated series");
  const double u = x - a + 1.0;
  const double v = x - y + 1.0;
  r.value += limit * (u * u - v * v) / 2.0;
  return r;
}

// ---------------------------------------------------------------------------

namespace {

struct PdeName {
  PdeKind kind;
  std::string_view id;
};

constexpr PdeName kPdeNames[] = {
    {PdeKind::sum_transport, "sum-transport"},
    {PdeKind::sum_mixed_zero, "sum-mixed-zero"},
    {PdeKind::prod_transport, "prod-transport"},
    {PdeKind::prod_mixed, "prod-mixed"},
};

// d2 F / dx dy by central differences at h and h/2, Richardson-combined.
// The step is far above the usual 1e-5: a nested difference divides
// rounding noise by h^2.
double mixed_partial(const std::function<double(double, double)>& F, double x, double y) {
  auto at = [&](double h) {
    return (F(x + h, y + h) - F(x + h, y - h) - F(x - h, y + h) + F(x - h, y - h)) / (4.0 * h * h);
  };
  constexpr double h = 2e-3;
  return (4.0 * at(h / 2.0) - at(h)) / 3.0;
}

}  // namespace

PdeKind parse_pde_kind(std::string_view id) {
  for (const auto& entry : kPdeNames) {
    if (entry.id == id) return entry.kind;
  }
  throw InvalidArgument("unknown PDE kind '" + std::string(id) + "'");
}

std::string_view to_string(PdeKind kind) noexcept {
  for (const auto& entry : kPdeNames) {
    if (entry.kind == kind) return entry.id;
  }
  return "unknown";
}

double pde_residual(PdeKind kind, const SummandSpec& f, double x, double y, double tol) {
  FracSumRequest req;
  req.summand = f;
  req.lower_y = y;
  req.upper_x = x;
  req.tol = tol;

  auto request_at = [&](const SummandSpec& g, double xx, double yy) {
    FracSumRequest r = req;
    r.summand = g;
    r.upper_x = xx;
    r.lower_y = yy;
    return r;
  };

  switch (kind) {
    case PdeKind::sum_transport: {
      const double lhs = d_upper(req).value + d_lower(req).value;
      const double rhs = frac_sum(request_at(derivative_summand(f), x, y)).value;
      return std::fabs(lhs - rhs);
    }
    case PdeKind::sum_mixed_zero: {
      return std::fabs(mixed_partial(
          [&](double xx, double yy) { return frac_sum(request_at(f, xx, yy)).value; }, x, y));
    }
    case PdeKind::prod_transport: {
      const double lhs = d_prod(req, Bound::upper).value + d_prod(req, Bound::lower).value;
      const double product = frac_prod(req).value;
      const SummandSpec log_derivative = derivative_summand(log_summand(f));
      const double rhs = product * frac_sum(request_at(log_derivative, x, y)).value;
      return std::fabs(lhs - rhs);
    }
    case PdeKind::prod_mixed: {
      const double product = frac_prod(req).value;
      const double px = d_prod(req, Bound::upper).value;
      const double py = d_prod(req, Bound::lower).value;
      const double pxy = mixed_partial(
          [&](double xx, double yy) { return frac_prod(request_at(f, xx, yy)).value; }, x, y);
      return std::fabs(product * pxy - px * py);
    }
  }
  throw InvalidArgument("unknown PDE kind");
}

}  // namespace fracsum
