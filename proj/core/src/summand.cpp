#include "fracsum/summand.hpp"

#include <cmath>
#include <numbers>

#include "fracsum/error.hpp"

namespace fracsum {

namespace {

using expr::BinaryOp;
using expr::Node;
using expr::NodeKind;
using expr::NodePtr;

bool is_minus_one(const Node& n) {
  if (n.kind() == NodeKind::constant) return n.value() == -1.0;
  return n.kind() == NodeKind::unary && n.child(0)->is_constant(1.0);
}

bool integer_literal(const Node& n, double& out) {
  if (n.kind() == NodeKind::constant && n.name().empty() && std::trunc(n.value()) == n.value()) {
    out = n.value();
    return true;
  }
  if (n.kind() == NodeKind::unary && integer_literal(*n.child(0), out)) {
    out = -out;
    return true;
  }
  return false;
}

// Matches k, k + c, c + k, k - c with integer literal c. Returns the shift.
bool parity_exponent(const Node& n, double& shift) {
  if (n.kind() == NodeKind::variable) {
    shift = 0.0;
    return true;
  }
  if (n.kind() != NodeKind::binary) return false;
  const Node& a = *n.child(0);
  const Node& b = *n.child(1);
  if (n.op() == BinaryOp::add) {
    if (a.kind() == NodeKind::variable && integer_literal(b, shift)) return true;
    if (b.kind() == NodeKind::variable && integer_literal(a, shift)) return true;
  }
  if (n.op() == BinaryOp::sub && a.kind() == NodeKind::variable && integer_literal(b, shift)) {
    shift = -shift;
    return true;
  }
  return false;
}

struct ParityRewrite {
  NodePtr with_cos;  // f with (-1)^(k+c) -> (-1)^c cos(pi k)
  NodePtr base;      // g with (-1)^(k+c) -> (-1)^c
  bool found = false;
};

// Walks the multiplicative skeleton (products, numerators, negations) and
// replaces the first sign factor it finds.
ParityRewrite rewrite_parity(const NodePtr& n) {
  if (n->kind() == NodeKind::binary && n->op() == BinaryOp::pow && is_minus_one(*n->child(0))) {
    double shift = 0.0;
    if (parity_exponent(*n->child(1), shift)) {
      const double sign = std::fmod(std::fabs(shift), 2.0) == 0.0 ? 1.0 : -1.0;
      NodePtr cos_pi_k = expr::call(
          expr::Function::cos,
          expr::binary(BinaryOp::mul, expr::constant(std::numbers::pi, "pi"), expr::variable()));
      NodePtr with_cos = sign > 0 ? cos_pi_k : expr::negate(cos_pi_k);
      return {with_cos, expr::constant(sign), true};
    }
  }
  if (n->kind() == NodeKind::unary) {
    auto inner = rewrite_parity(n->child(0));
    if (inner.found) return {expr::negate(inner.with_cos), expr::negate(inner.base), true};
  }
  if (n->kind() == NodeKind::binary && (n->op() == BinaryOp::mul || n->op() == BinaryOp::div)) {
    auto lhs = rewrite_parity(n->child(0));
    if (lhs.found) {
      return {expr::binary(n->op(), lhs.with_cos, n->child(1)),
              expr::binary(n->op(), lhs.base, n->child(1)), true};
    }
    if (n->op() == BinaryOp::mul) {
      auto rhs = rewrite_parity(n->child(1));
      if (rhs.found) {
        return {expr::binary(n->op(), n->child(0), rhs.with_cos),
                expr::binary(n->op(), n->child(0), rhs.base), true};
      }
    }
  }
  return {n, n, false};
}

double sample_limit(const NodePtr& body) {
  constexpr double kAccept = 1e-12;
  double prev = expr::evaluate(*body, std::ldexp(1.0, 10));
  double prev_richardson = NAN;
  for (int j = 11; j <= 40; ++j) {
    const double cur = expr::evaluate(*body, std::ldexp(1.0, j));
    if (std::fabs(cur - prev) < kAccept) return cur;
    // Error ~ c/k halves with each doubling; 2 f(2k) - f(k) removes it.
    const double richardson = 2.0 * cur - prev;
    if (std::isfinite(prev_richardson) && std::fabs(richardson - prev_richardson) < kAccept) {
      return richardson;
    }
    prev_richardson = richardson;
    prev = cur;
  }
  throw ConvergenceError("summand limit could not be estimated; pass an explicit limit");
}

}  // namespace

SummandSpec make_summand(NodePtr body, std::optional<double> limit, Monotonicity hint) {
  if (!body) throw InvalidArgument("summand body is empty");
  if (limit && !std::isfinite(*limit)) throw InvalidArgument("summand limit must be finite");
  SummandSpec spec;
  auto rewrite = rewrite_parity(body);
  spec.body = rewrite.with_cos;
  spec.parity_factor = rewrite.found;
  if (rewrite.found) spec.parity_base = rewrite.base;
  spec.derivative = expr::differentiate(spec.body);
  spec.limit = limit;
  spec.monotonic_hint = hint;
  return spec;
}

SummandSpec make_summand(std::string_view source, std::optional<double> limit, Monotonicity hint) {
  return make_summand(expr::parse(source), limit, hint);
}

SummandSpec derivative_summand(const SummandSpec& f) {
  SummandSpec d;
  d.body = f.derivative;
  d.derivative = expr::differentiate(f.derivative);
  d.limit = 0.0;
  d.parity_factor = f.parity_factor;
  return d;
}

double estimate_limit(const SummandSpec& f) {
  try {
    if (f.parity_factor) {
      const double g_limit = sample_limit(f.parity_base);
      if (std::fabs(g_limit) >= 1e-12) {
        throw ConvergenceError("alternating summand has no limit: |g(k)| does not tend to 0");
      }
      return 0.0;
    }
    return sample_limit(f.body);
  } catch (const DomainError& e) {
    throw ConvergenceError(std::string("summand limit could not be estimated: ") + e.what());
  }
}

double resolve_limit(const SummandSpec& f) { return f.limit ? *f.limit : estimate_limit(f); }

}  // namespace fracsum
