#pragma once

// Derivatives, Taylor expansions and integrals of sum_{k=y}^{x} f(k) with
// respect to either bound, plus pointwise residuals of the bound PDEs.

#include <cstddef>
#include <string_view>
#include <vector>

#include "fracsum/eval_result.hpp"
#include "fracsum/frac_sum.hpp"
#include "fracsum/summand.hpp"

namespace fracsum {

enum class Bound { upper, lower };

Bound parse_bound(std::string_view id);
std::string_view to_string(Bound bound) noexcept;

/// sum_j coefficients[j] u^j with u = upper_x - (y - 1) for an upper
/// expansion and u = lower_y - (x + 1) for a lower one; `center` holds
/// y - 1 or x + 1 respectively.
struct TaylorExpansion {
  double center = 0.0;
  std::vector<double> coefficients;
  std::size_t order = 0;
  Bound wrt = Bound::upper;

  double evaluate(double at) const;
  /// The inner series define an expansion that is only trusted for
  /// |at - center| < 1.
  bool within_radius(double at) const noexcept;
};

/// d/dx sum_{k=y}^{x} f(k) = L - sum_{k>=1} f'(k + x).
EvalResult d_upper(const FracSumRequest& req);

/// d/dy sum_{k=y}^{x} f(k) = -L + sum_{k>=0} f'(k + y).
EvalResult d_lower(const FracSumRequest& req);

/// Derivative of prod_{k=y}^{x} f(k) in either bound, as the product times
/// the matching derivative of sum ln f.
EvalResult d_prod(const FracSumRequest& req, Bound wrt);

/// Expansion in x about x = y - 1:
///   c_0 = 0, c_1 = L - S_1, c_j = -S_j / j!,  S_j = sum_{n>=0} f^(j)(n + y).
/// Summands of the form c k^(-m) use Hurwitz zeta for S_j.
/// Throws ConvergenceError when an inner series fails.
TaylorExpansion taylor_upper(const SummandSpec& f, double y, std::size_t order = 12,
                             double tol = 1e-13);

/// Expansion in y about y = x + 1:
///   c_0 = 0, c_1 = -L + S_1, c_j = S_j / j!,  S_j = sum_{n>=0} f^(j)(n + x + 1).
TaylorExpansion taylor_lower(const SummandSpec& f, double x, std::size_t order = 12,
                             double tol = 1e-13);

/// int_a^x sum_{k=y}^{t} f(k) dt
///   = L ((x-y+1)^2 - (a-y+1)^2) / 2
///     + sum_{k>=1} ( f(k+y-1) (x-a) - int_{k+a}^{k+x} f ).
EvalResult integrate_upper(const SummandSpec& f, double y, double a, double x,
                           double tol = 1e-10);

/// int_a^y sum_{k=t}^{x} f(k) dt
///   = L ((x-a+1)^2 - (x-y+1)^2) / 2
///     + sum_{k>=0} ( int_{k+a}^{k+y} f - f(k+x+1) (y-a) ).
EvalResult integrate_lower(const SummandSpec& f, double x, double a, double y,
                           double tol = 1e-10);

enum class PdeKind { sum_transport, sum_mixed_zero, prod_transport, prod_mixed };

PdeKind parse_pde_kind(std::string_view id);
std::string_view to_string(PdeKind kind) noexcept;

/// |LHS - RHS| at (x, y):
///   sum-transport   (d/dx + d/dy) S = sum_{k=y}^{x} f'
///   sum-mixed-zero  d2 S / dx dy = 0
///   prod-transport  (d/dx + d/dy) P = P sum_{k=y}^{x} f'/f
///   prod-mixed      P d2P/dxdy = dP/dx dP/dy
/// First derivatives are analytic; mixed partials are Richardson-refined
/// nested central differences.
double pde_residual(PdeKind kind, const SummandSpec& f, double x, double y, double tol = 1e-13);

}  // namespace fracsum
