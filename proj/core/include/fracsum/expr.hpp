#pragma once

// Summand expressions: a small single-variable language over `k`.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := '-' factor | power
//   power  := atom ('^' factor)?
//   atom   := number | 'k' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
//
// `^` is right-associative and binds tighter than unary minus, so `-k^2`
// is `-(k^2)` while `k^-2` is `k^(-2)`.

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracsum::expr {

enum class NodeKind { constant, variable, unary, binary, call };

enum class BinaryOp { add, sub, mul, div, pow };

/// `abs` and `floor` parse and evaluate but are rejected by differentiate().
enum class Function { sin, cos, exp, ln, sqrt, abs, floor };

class Node;
using NodePtr = std::shared_ptr<const Node>;

/// Immutable AST node. Build with the free factory functions below.
class Node {
 public:
  NodeKind kind() const noexcept { return kind_; }

  /// Numeric payload of a constant node.
  double value() const noexcept { return value_; }
  /// "pi" or "e" for named constants, empty otherwise.
  std::string_view name() const noexcept { return name_; }
  BinaryOp op() const noexcept { return op_; }
  Function function() const noexcept { return function_; }

  std::span<const NodePtr> children() const noexcept {
    return {children_.data(), arity_};
  }
  const NodePtr& child(std::size_t i) const { return children_.at(i); }

  bool depends_on_k() const noexcept { return depends_on_k_; }
  bool is_constant(double v) const noexcept {
    return kind_ == NodeKind::constant && value_ == v;
  }

 private:
  friend NodePtr constant(double, std::string_view);
  friend NodePtr variable();
  friend NodePtr negate(NodePtr);
  friend NodePtr binary(BinaryOp, NodePtr, NodePtr);
  friend NodePtr call(Function, NodePtr);

  Node() = default;

  NodeKind kind_ = NodeKind::constant;
  double value_ = 0.0;
  std::string name_;
  BinaryOp op_ = BinaryOp::add;
  Function function_ = Function::sin;
  std::array<NodePtr, 2> children_{};
  std::size_t arity_ = 0;
  bool depends_on_k_ = false;
};

// Factories. None of these simplify; differentiate() has its own folding.
NodePtr constant(double value, std::string_view name = {});
NodePtr variable();
NodePtr negate(NodePtr operand);
NodePtr binary(BinaryOp op, NodePtr lhs, NodePtr rhs);
NodePtr call(Function fn, NodePtr argument);

std::string_view function_name(Function fn) noexcept;

/// Parses `source`. Throws ParseError (syntax, unknown identifier, arity).
NodePtr parse(std::string_view source);

/// Value at `k`. Throws DomainError on division by zero, log or sqrt of a
/// negative, 0 to a negative power, a negative base to a non-integer power,
/// or any non-finite result.
double evaluate(const Node& node, double k);

/// Exact derivative with respect to `k`, with constant folding.
/// Throws InvalidArgument for abs/floor applied to a k-dependent argument.
NodePtr differentiate(const NodePtr& node);

/// `n`-th derivative by repeated differentiate().
NodePtr differentiate(const NodePtr& node, int n);

/// f^(j)(k) / j! for j = 0..order, by propagating truncated power series
/// through the tree. Exact like differentiate() but linear in the tree size,
/// where repeated symbolic differentiation grows exponentially.
/// Throws DomainError / InvalidArgument like evaluate() and differentiate().
std::vector<double> taylor_coefficients(const Node& node, double k, std::size_t order);

/// Source text that parses back to a structurally equal tree.
std::string to_string(const Node& node);

bool structurally_equal(const Node& a, const Node& b) noexcept;

std::size_t node_count(const Node& node) noexcept;

}  // namespace fracsum::expr
