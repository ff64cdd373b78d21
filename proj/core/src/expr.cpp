#include "fracsum/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "fracsum/error.hpp"
#include "fracsum/special.hpp"

namespace fracsum::expr {

// ---------------------------------------------------------------------------
// Factories

NodePtr constant(double value, std::string_view name) {
  auto node = std::shared_ptr<Node>(new Node);
  node->kind_ = NodeKind::constant;
  node->value_ = value;
  node->name_ = std::string(name);
  return node;
}

NodePtr variable() {
  auto node = std::shared_ptr<Node>(new Node);
  node->kind_ = NodeKind::variable;
  node->depends_on_k_ = true;
  return node;
}

NodePtr negate(NodePtr operand) {
  auto node = std::shared_ptr<Node>(new Node);
  node->kind_ = NodeKind::unary;
  node->depends_on_k_ = operand->depends_on_k();
  node->children_[0] = std::move(operand);
  node->arity_ = 1;
  return node;
}

NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
  auto node = std::shared_ptr<Node>(new Node);
  node->kind_ = NodeKind::binary;
  node->op_ = op;
  node->depends_on_k_ = lhs->depends_on_k() || rhs->depends_on_k();
  node->children_[0] = std::move(lhs);
  node->children_[1] = std::move(rhs);
  node->arity_ = 2;
  return node;
}

NodePtr call(Function fn, NodePtr argument) {
  auto node = std::shared_ptr<Node>(new Node);
  node->kind_ = NodeKind::call;
  node->function_ = fn;
  node->depends_on_k_ = argument->depends_on_k();
  node->children_[0] = std::move(argument);
  node->arity_ = 1;
  return node;
}

std::string_view function_name(Function fn) noexcept {
  switch (fn) {
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::exp: return "exp";
    case Function::ln: return "ln";
    case Function::sqrt: return "sqrt";
    case Function::abs: return "abs";
    case Function::floor: return "floor";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool lookup_function(std::string_view name, Function& out) {
  static constexpr Function all[] = {Function::sin,  Function::cos, Function::exp,
                                     Function::ln,   Function::sqrt, Function::abs,
                                     Function::floor};
  for (auto fn : all) {
    if (function_name(fn) == name) {
      out = fn;
      return true;
    }
  }
  return false;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    auto node = parse_expr();
    skip_space();
    if (pos_ != src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return node;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                  src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) {
        throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
      }
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_term() {
    auto lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_factor() {
    if (accept('-')) return negate(parse_factor());
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_atom();
    if (accept('^')) return binary(BinaryOp::pow, base, parse_factor());
    return base;
  }

  NodePtr parse_atom() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    if (is_digit(c) || c == '.') return parse_number();
    if (is_alpha(c)) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    // Exponent only when 'e' is followed by digits, so "2e" stays an error
    // rather than silently meaning 2*e.
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && is_digit(src_[look])) {
        pos_ = look;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      throw ParseError("malformed number '" + std::string(first, last) + "'", start);
    }
    return constant(value);
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);

    Function fn{};
    if (lookup_function(name, fn)) {
      if (!accept('(')) throw ParseError("function '" + std::string(name) + "' expects '('", pos_);
      auto argument = parse_expr();
      skip_space();
      if (pos_ < src_.size() && src_[pos_] == ',') {
        throw ParseError("function '" + std::string(name) + "' takes exactly one argument", pos_);
      }
      expect(')');
      return call(fn, argument);
    }
    if (name == "k") return variable();
    if (name == "pi") return constant(std::numbers::pi, "pi");
    if (name == "e") return constant(std::numbers::e, "e");
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

NodePtr parse(std::string_view source) { return Parser(source).parse_all(); }

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

bool is_integral(double v) { return std::isfinite(v) && std::trunc(v) == v; }

// For sin/cos of pi*u, returns the node u.
const Node* pi_multiple(const Node& arg) {
  if (arg.kind() != NodeKind::binary || arg.op() != BinaryOp::mul) return nullptr;
  const Node& lhs = *arg.child(0);
  const Node& rhs = *arg.child(1);
  if (lhs.kind() == NodeKind::constant && lhs.name() == "pi") return &rhs;
  if (rhs.kind() == NodeKind::constant && rhs.name() == "pi") return &lhs;
  return nullptr;
}

// For a node of the form 1 + u (either order), evaluates u so that callers
// can use log1p instead of rounding 1 + u first.
std::optional<double> offset_from_one(const Node& node, double k) {
  if (node.kind() != NodeKind::binary || node.op() != BinaryOp::add) return std::nullopt;
  const Node& lhs = *node.child(0);
  const Node& rhs = *node.child(1);
  if (lhs.is_constant(1.0)) return evaluate(rhs, k);
  if (rhs.is_constant(1.0)) return evaluate(lhs, k);
  return std::nullopt;
}

double log_of(const Node& arg, double k) {
  if (const auto u = offset_from_one(arg, k)) {
    if (!(*u > -1.0)) throw DomainError("logarithm of a non-positive number");
    return std::log1p(*u);
  }
  const double x = evaluate(arg, k);
  if (!(x > 0.0)) throw DomainError("logarithm of a non-positive number");
  return std::log(x);
}

double eval_pow(const Node& node, double k) {
  const Node& base_node = *node.child(0);
  const Node& exp_node = *node.child(1);
  if (base_node.depends_on_k() && exp_node.depends_on_k()) {
    const double power = evaluate(exp_node, k);
    double log_base = 0.0;
    try {
      log_base = log_of(base_node, k);
    } catch (const DomainError&) {
      throw DomainError("variable base must be positive under a variable exponent");
    }
    return checked(std::exp(power * log_base), "power");
  }
  const double base = evaluate(base_node, k);
  const double power = evaluate(exp_node, k);
  if (base == 0.0) {
    if (power < 0.0) throw DomainError("zero raised to a negative power");
    return power == 0.0 ? 1.0 : 0.0;
  }
  if (base < 0.0 && !is_integral(power)) {
    throw DomainError("negative base raised to a non-integer power");
  }
  return checked(std::pow(base, power), "power");
}

}  // namespace

double evaluate(const Node& node, double k) {
  switch (node.kind()) {
    case NodeKind::constant:
      return node.value();
    case NodeKind::variable:
      return k;
    case NodeKind::unary:
      return -evaluate(*node.child(0), k);
    case NodeKind::binary: {
      if (node.op() == BinaryOp::pow) return eval_pow(node, k);
      const double a = evaluate(*node.child(0), k);
      const double b = evaluate(*node.child(1), k);
      switch (node.op()) {
        case BinaryOp::add: return checked(a + b, "addition");
        case BinaryOp::sub: return checked(a - b, "subtraction");
        case BinaryOp::mul: return checked(a * b, "multiplication");
        case BinaryOp::div:
          if (b == 0.0) throw DomainError("division by zero");
          return checked(a / b, "division");
        case BinaryOp::pow: break;
      }
      break;
    }
    case NodeKind::call: {
      const Node& arg = *node.child(0);
      switch (node.function()) {
        case Function::sin:
          if (const Node* u = pi_multiple(arg)) return special::sin_pi(evaluate(*u, k));
          return std::sin(evaluate(arg, k));
        case Function::cos:
          if (const Node* u = pi_multiple(arg)) return special::cos_pi(evaluate(*u, k));
          return std::cos(evaluate(arg, k));
        case Function::exp:
          return checked(std::exp(evaluate(arg, k)), "exp");
        case Function::ln:
          return log_of(arg, k);
        case Function::sqrt: {
          const double x = evaluate(arg, k);
          if (x < 0.0) throw DomainError("square root of a negative number");
          return std::sqrt(x);
        }
        case Function::abs:
          return std::fabs(evaluate(arg, k));
        case Function::floor:
          return std::floor(evaluate(arg, k));
      }
      break;
    }
  }
  throw DomainError("corrupt expression node");
}

// ---------------------------------------------------------------------------
// Differentiation with constant folding

namespace {

bool is_const(const NodePtr& n) { return n->kind() == NodeKind::constant; }

NodePtr fold_or(double v, NodePtr fallback) {
  if (std::isfinite(v)) return constant(v);
  return fallback;
}

NodePtr make_neg(const NodePtr& a) {
  if (is_const(a)) return constant(-a->value());
  if (a->kind() == NodeKind::unary) return a->child(0);
  return negate(a);
}

NodePtr make_add(const NodePtr& a, const NodePtr& b) {
  if (a->is_constant(0.0)) return b;
  if (b->is_constant(0.0)) return a;
  if (is_const(a) && is_const(b)) return fold_or(a->value() + b->value(), binary(BinaryOp::add, a, b));
  return binary(BinaryOp::add, a, b);
}

NodePtr make_sub(const NodePtr& a, const NodePtr& b) {
  if (b->is_constant(0.0)) return a;
  if (a->is_constant(0.0)) return make_neg(b);
  if (is_const(a) && is_const(b)) return fold_or(a->value() - b->value(), binary(BinaryOp::sub, a, b));
  return binary(BinaryOp::sub, a, b);
}

NodePtr make_mul(NodePtr a, NodePtr b) {
  if (is_const(b) && !is_const(a)) std::swap(a, b);
  if (a->is_constant(0.0) || b->is_constant(0.0)) return constant(0.0);
  if (a->is_constant(1.0)) return b;
  if (a->is_constant(-1.0)) return make_neg(b);
  if (is_const(a) && is_const(b)) return fold_or(a->value() * b->value(), binary(BinaryOp::mul, a, b));
  if (is_const(a) && b->kind() == NodeKind::binary && b->op() == BinaryOp::mul &&
      is_const(b->child(0)) && b->child(0)->name().empty() && a->name().empty()) {
    return make_mul(constant(a->value() * b->child(0)->value()), b->child(1));
  }
  if (is_const(a) && b->kind() == NodeKind::unary) return make_mul(make_neg(a), b->child(0));
  return binary(BinaryOp::mul, a, b);
}

NodePtr make_div(const NodePtr& a, const NodePtr& b) {
  if (a->is_constant(0.0)) return constant(0.0);
  if (b->is_constant(1.0)) return a;
  if (is_const(a) && is_const(b) && b->value() != 0.0) {
    return fold_or(a->value() / b->value(), binary(BinaryOp::div, a, b));
  }
  return binary(BinaryOp::div, a, b);
}

NodePtr make_pow(const NodePtr& a, const NodePtr& b) {
  if (b->is_constant(1.0)) return a;
  if (b->is_constant(0.0)) return constant(1.0);
  if (is_const(a) && is_const(b)) {
    const double v = std::pow(a->value(), b->value());
    if (std::isfinite(v)) return constant(v);
  }
  return binary(BinaryOp::pow, a, b);
}

// Folds a k-free subtree to a single constant when it evaluates cleanly.
NodePtr fold_constant(const NodePtr& n) {
  if (n->depends_on_k() || is_const(n)) return n;
  try {
    return constant(evaluate(*n, 0.0));
  } catch (const DomainError&) {
    return n;
  }
}

NodePtr derive(const NodePtr& n) {
  if (!n->depends_on_k()) return constant(0.0);
  switch (n->kind()) {
    case NodeKind::constant:
      return constant(0.0);
    case NodeKind::variable:
      return constant(1.0);
    case NodeKind::unary:
      return make_neg(derive(n->child(0)));
    case NodeKind::binary: {
      const NodePtr& u = n->child(0);
      const NodePtr& v = n->child(1);
      switch (n->op()) {
        case BinaryOp::add: return make_add(derive(u), derive(v));
        case BinaryOp::sub: return make_sub(derive(u), derive(v));
        case BinaryOp::mul:
          return make_add(make_mul(derive(u), v), make_mul(u, derive(v)));
        case BinaryOp::div: {
          if (!v->depends_on_k()) return make_div(derive(u), v);
          const NodePtr v2 = make_pow(v, constant(2.0));
          if (!u->depends_on_k()) {
            return make_div(make_neg(make_mul(u, derive(v))), v2);
          }
          return make_div(make_sub(make_mul(derive(u), v), make_mul(u, derive(v))), v2);
        }
        case BinaryOp::pow: {
          if (!v->depends_on_k()) {
            // d(u^c) = c u^(c-1) u'
            const NodePtr c = fold_constant(v);
            const NodePtr c_minus_1 = make_sub(c, constant(1.0));
            return make_mul(make_mul(c, make_pow(u, c_minus_1)), derive(u));
          }
          if (!u->depends_on_k()) {
            // d(a^v) = a^v ln(a) v'
            const NodePtr a = fold_constant(u);
            NodePtr ln_a = (a->kind() == NodeKind::constant && a->name() == "e")
                               ? constant(1.0)
                               : fold_constant(call(Function::ln, a));
            return make_mul(make_mul(ln_a, n), derive(v));
          }
          // d(u^v) = u^v (v' ln u + v u'/u)
          return make_mul(n, make_add(make_mul(derive(v), call(Function::ln, u)),
                                      make_div(make_mul(v, derive(u)), u)));
        }
      }
      break;
    }
    case NodeKind::call: {
      const NodePtr& u = n->child(0);
      const NodePtr du = derive(u);
      switch (n->function()) {
        case Function::sin: return make_mul(call(Function::cos, u), du);
        case Function::cos: return make_mul(make_neg(call(Function::sin, u)), du);
        case Function::exp: return make_mul(n, du);
        case Function::ln: return make_div(du, u);
        case Function::sqrt: return make_div(du, make_mul(constant(2.0), n));
        case Function::abs:
        case Function::floor:
          throw InvalidArgument("'" + std::string(function_name(n->function())) +
                                "' is not differentiable");
      }
      break;
    }
  }
  throw InvalidArgument("corrupt expression node");
}

}  // namespace

NodePtr differentiate(const NodePtr& node) { return derive(node); }

NodePtr differentiate(const NodePtr& node, int n) {
  if (n < 0) throw InvalidArgument("derivative order must be non-negative");
  NodePtr out = node;
  for (int i = 0; i < n; ++i) out = derive(out);
  return out;
}

// ---------------------------------------------------------------------------
// Taylor-mode differentiation

namespace {

using Jet = std::vector<double>;

Jet jet_mul(const Jet& a, const Jet& b) {
  Jet w(a.size(), 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    for (std::size_t j = 0; j <= n; ++j) w[n] += a[j] * b[n - j];
  }
  return w;
}

Jet jet_div(const Jet& u, const Jet& v) {
  if (v[0] == 0.0) throw DomainError("division by zero");
  Jet w(u.size(), 0.0);
  for (std::size_t n = 0; n < w.size(); ++n) {
    double acc = u[n];
    for (std::size_t j = 1; j <= n; ++j) acc -= v[j] * w[n - j];
    w[n] = acc / v[0];
  }
  return w;
}

Jet jet_exp(const Jet& u, double w0) {
  Jet w(u.size(), 0.0);
  w[0] = w0;
  for (std::size_t n = 1; n < w.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) acc += static_cast<double>(j) * u[j] * w[n - j];
    w[n] = acc / static_cast<double>(n);
  }
  return w;
}

Jet jet_log(const Jet& u, double w0) {
  if (!(u[0] > 0.0)) throw DomainError("logarithm of a non-positive number");
  Jet w(u.size(), 0.0);
  w[0] = w0;
  for (std::size_t n = 1; n < w.size(); ++n) {
    double acc = u[n];
    for (std::size_t j = 1; j < n; ++j) {
      acc -= static_cast<double>(j) * w[j] * u[n - j] / static_cast<double>(n);
    }
    w[n] = acc / u[0];
  }
  return w;
}

// u^p for constant p.
Jet jet_pow_const(const Jet& u, double p, double w0) {
  Jet w(u.size(), 0.0);
  w[0] = w0;
  if (u[0] == 0.0) {
    if (!(is_integral(p) && p >= 0.0)) throw DomainError("zero raised to a non-integer power");
    Jet out(u.size(), 0.0);
    out[0] = 1.0;
    for (int i = 0; i < static_cast<int>(p); ++i) out = jet_mul(out, u);
    return out;
  }
  for (std::size_t n = 1; n < w.size(); ++n) {
    double acc = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      acc += ((p + 1.0) * static_cast<double>(j) - static_cast<double>(n)) * u[j] * w[n - j];
    }
    w[n] = acc / (static_cast<double>(n) * u[0]);
  }
  return w;
}

void jet_sin_cos(const Jet& u, double s0, double c0, Jet& s, Jet& c) {
  s.assign(u.size(), 0.0);
  c.assign(u.size(), 0.0);
  s[0] = s0;
  c[0] = c0;
  for (std::size_t n = 1; n < u.size(); ++n) {
    double as = 0.0, ac = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      const double ju = static_cast<double>(j) * u[j];
      as += ju * c[n - j];
      ac -= ju * s[n - j];
    }
    s[n] = as / static_cast<double>(n);
    c[n] = ac / static_cast<double>(n);
  }
}

Jet jet_sqrt(const Jet& u, double w0) {
  if (u[0] < 0.0) throw DomainError("square root of a negative number");
  if (u[0] == 0.0 && u.size() > 1) throw DomainError("square root is not differentiable at 0");
  Jet w(u.size(), 0.0);
  w[0] = w0;
  for (std::size_t n = 1; n < w.size(); ++n) {
    double acc = u[n];
    for (std::size_t j = 1; j < n; ++j) acc -= w[j] * w[n - j];
    w[n] = acc / (2.0 * w[0]);
  }
  return w;
}

Jet jet(const Node& node, double k, std::size_t size) {
  Jet w(size, 0.0);
  if (!node.depends_on_k()) {
    w[0] = evaluate(node, k);
    return w;
  }
  switch (node.kind()) {
    case NodeKind::constant:
      w[0] = node.value();
      return w;
    case NodeKind::variable:
      w[0] = k;
      if (size > 1) w[1] = 1.0;
      return w;
    case NodeKind::unary: {
      w = jet(*node.child(0), k, size);
      for (double& v : w) v = -v;
      return w;
    }
    case NodeKind::binary: {
      const Node& lhs = *node.child(0);
      const Node& rhs = *node.child(1);
      if (node.op() == BinaryOp::pow) {
        if (!rhs.depends_on_k()) {
          return jet_pow_const(jet(lhs, k, size), evaluate(rhs, k), evaluate(node, k));
        }
        // u^v = exp(v ln u)
        const Jet log_base = jet_log(jet(lhs, k, size), log_of(lhs, k));
        const Jet e = jet_mul(jet(rhs, k, size), log_base);
        return jet_exp(e, checked(std::exp(e[0]), "power"));
      }
      const Jet a = jet(lhs, k, size);
      const Jet b = jet(rhs, k, size);
      switch (node.op()) {
        case BinaryOp::add:
          for (std::size_t n = 0; n < size; ++n) w[n] = a[n] + b[n];
          return w;
        case BinaryOp::sub:
          for (std::size_t n = 0; n < size; ++n) w[n] = a[n] - b[n];
          return w;
        case BinaryOp::mul:
          return jet_mul(a, b);
        case BinaryOp::div:
          return jet_div(a, b);
        case BinaryOp::pow:
          break;
      }
      break;
    }
    case NodeKind::call: {
      const Node& arg = *node.child(0);
      const Jet u = jet(arg, k, size);
      switch (node.function()) {
        case Function::sin:
        case Function::cos: {
          double s0 = 0.0, c0 = 0.0;
          if (const Node* m = pi_multiple(arg)) {
            const double t = evaluate(*m, k);
            s0 = special::sin_pi(t);
            c0 = special::cos_pi(t);
          } else {
            s0 = std::sin(u[0]);
            c0 = std::cos(u[0]);
          }
          Jet s, c;
          jet_sin_cos(u, s0, c0, s, c);
          return node.function() == Function::sin ? s : c;
        }
        case Function::exp:
          return jet_exp(u, checked(std::exp(u[0]), "exp"));
        case Function::ln:
          return jet_log(u, log_of(arg, k));
        case Function::sqrt:
          return jet_sqrt(u, std::sqrt(std::max(u[0], 0.0)));
        case Function::abs:
        case Function::floor:
          throw InvalidArgument(std::string(function_name(node.function())) +
                                " is not differentiable");
      }
      break;
    }
  }
  throw DomainError("corrupt expression node");
}

}  // namespace

std::vector<double> taylor_coefficients(const Node& node, double k, std::size_t order) {
  Jet w = jet(node, k, order + 1);
  for (const double v : w) {
    if (!std::isfinite(v)) throw DomainError("non-finite Taylor coefficient");
  }
  return w;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength of the construct a node prints as.
int precedence(const Node& n) {
  switch (n.kind()) {
    case NodeKind::constant:
      return (n.value() < 0.0 || std::signbit(n.value())) && n.name().empty() ? 3 : 5;
    case NodeKind::variable:
    case NodeKind::call:
      return 5;
    case NodeKind::unary:
      return 3;
    case NodeKind::binary:
      switch (n.op()) {
        case BinaryOp::add:
        case BinaryOp::sub: return 1;
        case BinaryOp::mul:
        case BinaryOp::div: return 2;
        case BinaryOp::pow: return 4;
      }
  }
  return 5;
}

void print(const Node& n, std::string& out);

void print_at(const Node& n, int min_precedence, std::string& out) {
  if (precedence(n) < min_precedence) {
    out += '(';
    print(n, out);
    out += ')';
  } else {
    print(n, out);
  }
}

void print_number(double v, std::string& out) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) {
    out += "nan";
    return;
  }
  out.append(buf, ptr);
}

void print(const Node& n, std::string& out) {
  switch (n.kind()) {
    case NodeKind::constant:
      if (!n.name().empty()) {
        out += n.name();
      } else if (std::signbit(n.value())) {
        out += '-';
        print_number(-n.value(), out);
      } else {
        print_number(n.value(), out);
      }
      return;
    case NodeKind::variable:
      out += 'k';
      return;
    case NodeKind::unary:
      out += '-';
      print_at(*n.child(0), 3, out);
      return;
    case NodeKind::call:
      out += function_name(n.function());
      out += '(';
      print(*n.child(0), out);
      out += ')';
      return;
    case NodeKind::binary:
      switch (n.op()) {
        case BinaryOp::add:
        case BinaryOp::sub:
          print_at(*n.child(0), 1, out);
          out += n.op() == BinaryOp::add ? " + " : " - ";
          print_at(*n.child(1), 2, out);
          return;
        case BinaryOp::mul:
        case BinaryOp::div:
          print_at(*n.child(0), 2, out);
          out += n.op() == BinaryOp::mul ? "*" : "/";
          print_at(*n.child(1), 3, out);
          return;
        case BinaryOp::pow:
          print_at(*n.child(0), 5, out);
          out += '^';
          print_at(*n.child(1), 3, out);
          return;
      }
  }
}

}  // namespace

std::string to_string(const Node& node) {
  std::string out;
  print(node, out);
  return out;
}

bool structurally_equal(const Node& a, const Node& b) noexcept {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::constant:
      return a.name() == b.name() &&
             (a.value() == b.value() || (std::isnan(a.value()) && std::isnan(b.value())));
    case NodeKind::variable:
      return true;
    case NodeKind::unary:
      return structurally_equal(*a.child(0), *b.child(0));
    case NodeKind::binary:
      return a.op() == b.op() && structurally_equal(*a.child(0), *b.child(0)) &&
             structurally_equal(*a.child(1), *b.child(1));
    case NodeKind::call:
      return a.function() == b.function() && structurally_equal(*a.child(0), *b.child(0));
  }
  return false;
}

std::size_t node_count(const Node& node) noexcept {
  std::size_t count = 1;
  for (const auto& c : node.children()) count += node_count(*c);
  return count;
}

}  // namespace fracsum::expr
