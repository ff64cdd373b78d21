#pragma once

// Sums and products with real bounds:
//
//   sum_{k=y}^{x} f(k)  = L (x - y + 1) + sum_{k>=1} (f(k+y-1) - f(k+x))
//   prod_{k=y}^{x} f(k) = L^(x-y+1) prod_{k>=1} f(k+y-1) / f(k+x)
//
// where L is the limit of f at infinity.

#include <cstddef>
#include <string_view>

#include "fracsum/eval_result.hpp"
#include "fracsum/summand.hpp"

namespace fracsum {

struct FracSumRequest {
  SummandSpec summand;
  double lower_y = 1.0;
  double upper_x = 0.0;
  double tol = 1e-10;
  std::size_t max_terms = 1'000'000;
  /// Bounds with y > x + 1 are evaluated as -sum_{k=x+1}^{y-1}; turn this
  /// off to evaluate the continuation series directly.
  bool use_reflection = true;
};

/// Throws ConvergenceError on a diverged series, DomainError when an
/// evaluation point leaves the summand's domain. x = y - 1 returns exactly 0.
EvalResult frac_sum(const FracSumRequest& req);

/// Computed as exp(frac_sum of ln f). x = y - 1 returns exactly 1.
/// Throws DomainError for a non-positive factor or limit.
EvalResult frac_prod(const FracSumRequest& req);

/// sum_{k>=1} (f(k+y-1) - f(k+x)) alone, without the L (x - y + 1) term.
EvalResult continuation_series(const FracSumRequest& req);

/// ln f with derivative f'/f and limit ln L; the product machinery runs
/// the sum machinery on this summand.
SummandSpec log_summand(const SummandSpec& f);

/// Term-by-term sum f(y) + f(y+1) + ... + f(x) for integral x - y >= -1.
double direct_sum(const SummandSpec& f, long long y, long long x);
double direct_product(const SummandSpec& f, long long y, long long x);

enum class Property {
  empty_sum,
  empty_prod,
  recurrence_low,
  recurrence_high,
  split,
  reflection,
  prod_recurrence_low,
  prod_recurrence_high,
  prod_split,
  prod_reflection,
};

Property parse_property(std::string_view id);
std::string_view to_string(Property property) noexcept;

struct PropertyParams {
  double split_point = 0.0;  // c in the split laws
};

/// |LHS - RHS| for sum laws, |LHS / RHS - 1| for product laws, with both
/// sides evaluated by frac_sum/frac_prod. Reflection sides are evaluated
/// from the raw continuation series.
double check_property(Property property, const FracSumRequest& req,
                      const PropertyParams& aux = {});

}  // namespace fracsum
