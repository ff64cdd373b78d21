#pragma once

// Closed-form continuations of harmonic-type numbers.

#include <cstddef>
#include <vector>

#include "fracsum/special.hpp"

namespace fracsum {

/// H_x = sum_{k>=1} x / (k (k + x)). Throws DomainError at negative
/// integers.
double harmonic(double x, double tol = 1e-13);

/// H_x^(m) = zeta(m) - zeta(m, x + 1) for m > 1, x > 0.
double gen_harmonic(double x, double m);

/// Alternating harmonic numbers,
///   ln 2 + cos(pi x) (psi((x+1)/2)/2 - psi(x/2)/2 - 1/x),
/// with the removable point x = 0 mapped to 0. Throws DomainError at
/// negative integers.
double alt_harmonic(double x);

/// The same function from ln 2 + cos(pi x) sum_{k>=1} (-1)^k / (k + x),
/// summed by the series engine. Slower; kept as an independent check.
double alt_harmonic_series(double x, double tol = 1e-13);

/// |(H'_x - H'_{2-x}) - (pi cot(pi x) - cos(pi x)(x^2-2x+2) / (x(x^2-3x+2)))|
/// for the alternating harmonic H'. Throws DomainError at integers.
double alt_harmonic_reflection_residual(double x);

/// (1/pi) arctan(pi / ln 2): the asymptotic distance of the n-th root of
/// the alternating harmonic function below -n.
double alt_harmonic_root_offset();

struct AltHarmonicRoot {
  std::size_t index_n = 0;
  double location = 0.0;  // in (-n-1, -n)
  double residual = 0.0;  // |H'(location)|
  bool found = false;     // false when no sign change was bracketed
};

/// For n = 1..n_max: scans (-n-1, -n) at step 0.01 for a sign change and
/// bisects it to a bracket of width 1e-12.
std::vector<AltHarmonicRoot> alt_harmonic_roots(std::size_t n_max);

/// Partial sums n = 2..terms of
///   sum_n (-1)^n (m+n-2)_{m-1} zeta(m+n-1) / n!
/// with the given Pochhammer convention. The terms do not decay (they
/// oscillate with growing or constant size), so the returned value is the
/// Wynn-epsilon limit of the partial sums; `raw` skips the acceleration.
double zeta_series_identity(int m, std::size_t terms,
                            special::PochhammerConvention convention =
                                special::PochhammerConvention::factorial_ratio,
                            bool raw = false);

/// sum_{k=2}^{terms} (-1)^k zeta(k) / k, accelerated like
/// zeta_series_identity(); tends to Euler's gamma.
double zeta_gamma_series(std::size_t terms, bool raw = false);

}  // namespace fracsum
