#pragma once

#include <optional>
#include <string_view>

#include "fracsum/expr.hpp"

namespace fracsum {

enum class Monotonicity { increasing, decreasing, unknown };

/// A parsed summand f(k) with its derivative and limit metadata.
///
/// When the source contains a sign factor `(-1)^(k+c)` (c an integer
/// literal, possibly absent) inside a product or quotient, the factor is
/// replaced by `(-1)^c * cos(pi*k)`; `parity_factor` is set and
/// `parity_base` holds the remaining g(k), so that f(k) = cos(pi*k) g(k).
struct SummandSpec {
  expr::NodePtr body;
  expr::NodePtr derivative;
  /// Finite limit of f(k) as k -> infinity; empty means "estimate it".
  std::optional<double> limit;
  bool parity_factor = false;
  expr::NodePtr parity_base;
  Monotonicity monotonic_hint = Monotonicity::unknown;

  double operator()(double k) const { return expr::evaluate(*body, k); }
  double prime(double k) const { return expr::evaluate(*derivative, k); }
};

/// Builds a summand from an already parsed body.
SummandSpec make_summand(expr::NodePtr body, std::optional<double> limit,
                         Monotonicity hint = Monotonicity::unknown);

SummandSpec make_summand(std::string_view source, std::optional<double> limit,
                         Monotonicity hint = Monotonicity::unknown);

/// The summand f' with limit 0, used by the transport identity.
SummandSpec derivative_summand(const SummandSpec& f);

/// Either the declared limit or estimate_limit().
double resolve_limit(const SummandSpec& f);

/// Samples f at k = 2^j, j = 10..40, and accepts once successive samples
/// (or their first-order Richardson extrapolants) differ by less than
/// 1e-12. Parity summands must have g(k) -> 0, giving L = 0.
/// Throws ConvergenceError when no limit is detected.
double estimate_limit(const SummandSpec& f);

}  // namespace fracsum
