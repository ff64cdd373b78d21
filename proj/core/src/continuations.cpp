#include "fracsum/continuations.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fracsum/engine.hpp"
#include "fracsum/error.hpp"

namespace fracsum {

namespace {

bool is_negative_integer(double x) { return x < 0.0 && std::trunc(x) == x; }

}  // namespace

double harmonic(double x, double tol) {
  if (!std::isfinite(x)) throw DomainError("harmonic of a non-finite argument");
  if (is_negative_integer(x)) throw DomainError("harmonic numbers have poles at negative integers");
  if (x == 0.0) return 0.0;
  // int_n^inf x / (t (t + x)) dt = ln(1 + x/n)
  const auto r = engine::sum_series([x](double k) { return x / (k * (k + x)); },
                                    engine::SeriesOptions{tol, 1'000'000,
                                                          [x](double n) { return std::log1p(x / n); }});
  if (!r.ok()) throw ConvergenceError("harmonic series did not converge");
  return r.value;
}

double gen_harmonic(double x, double m) {
  if (!(m > 1.0)) throw InvalidArgument("generalized harmonic numbers need m > 1");
  if (!(x > 0.0)) throw InvalidArgument("generalized harmonic numbers need x > 0");
  return special::riemann_zeta(m) - special::hurwitz_zeta(m, x + 1.0);
}

double alt_harmonic(double x) {
  if (!std::isfinite(x)) throw DomainError("alternating harmonic of a non-finite argument");
  if (x == 0.0) return 0.0;
  if (is_negative_integer(x)) {
    throw DomainError("alternating harmonic numbers have poles at negative integers");
  }
  const double c = special::cos_pi(x);
  if (c == 0.0) return std::numbers::ln2;
  const double bracket =
      0.5 * (special::digamma((x + 1.0) / 2.0) - special::digamma(x / 2.0)) - 1.0 / x;
  return std::numbers::ln2 + c * bracket;
}

double alt_harmonic_series(double x, double tol) {
  if (!std::isfinite(x)) throw DomainError("alternating harmonic of a non-finite argument");
  if (x == 0.0) return 0.0;
  if (is_negative_integer(x)) {
    throw DomainError("alternating harmonic numbers have poles at negative integers");
  }
  const auto r = engine::sum_series(
      [x](double k) { return (std::fmod(k, 2.0) == 0.0 ? 1.0 : -1.0) / (k + x); },
      engine::SeriesOptions{tol, 1'000'000});
  if (!r.ok()) throw ConvergenceError("alternating harmonic series did not converge");
  return std::numbers::ln2 + special::cos_pi(x) * r.value;
}

double alt_harmonic_reflection_residual(double x) {
  if (std::trunc(x) == x) throw DomainError("reflection formula has poles at integers");
  const double lhs = alt_harmonic(x) - alt_harmonic(2.0 - x);
  const double rhs = special::pi_cot_pi(x) -
                     special::cos_pi(x) * (x * x - 2.0 * x + 2.0) / (x * (x * x - 3.0 * x + 2.0));
  return std::fabs(lhs - rhs);
}

double alt_harmonic_root_offset() {
  return std::atan(std::numbers::pi / std::numbers::ln2) / std::numbers::pi;
}

std::vector<AltHarmonicRoot> alt_harmonic_roots(std::size_t n_max) {
  if (n_max < 1) throw InvalidArgument("alt_harmonic_roots needs n_max >= 1");
  constexpr double kStep = 0.01;
  constexpr double kWidth = 1e-12;
  std::vector<AltHarmonicRoot> roots;
  roots.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    AltHarmonicRoot root;
    root.index_n = n;
    root.location = std::nan("");
    root.residual = std::nan("");
    const double left = -static_cast<double>(n) - 1.0;
    double a = left + kStep;
    double fa = alt_harmonic(a);
    for (int i = 2; i < 100; ++i) {
      const double b = left + i * kStep;
      const double fb = alt_harmonic(b);
      if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
        if (fa == 0.0) {
          root.location = a;
        } else {
          double lo = a, hi = b, flo = fa;
          while (hi - lo > kWidth) {
            const double mid = 0.5 * (lo + hi);
            const double fm = alt_harmonic(mid);
            if (fm == 0.0) {
              lo = hi = mid;
              break;
            }
            if ((fm < 0.0) == (flo < 0.0)) {
              lo = mid;
              flo = fm;
            } else {
              hi = mid;
            }
          }
          root.location = 0.5 * (lo + hi);
        }
        root.residual = std::fabs(alt_harmonic(root.location));
        root.found = true;
        break;
      }
      a = b;
      fa = fb;
    }
    roots.push_back(root);
  }
  return roots;
}

namespace {

double accelerated_or_raw(const std::vector<double>& partials, bool raw) {
  if (partials.empty()) return 0.0;
  if (raw) return partials.back();
  return engine::wynn_epsilon(partials);
}

}  // namespace

double zeta_series_identity(int m, std::size_t terms, special::PochhammerConvention convention,
                            bool raw) {
  if (m < 2) throw InvalidArgument("zeta_series_identity needs m >= 2");
  std::vector<double> partials;
  engine::CompensatedSum sum;
  double factorial = 1.0;  // n!
  for (std::size_t n = 2; n <= terms; ++n) {
    factorial *= static_cast<double>(n);
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const double poch =
        special::pochhammer(static_cast<double>(m) + static_cast<double>(n) - 2.0, m - 1, convention);
    sum.add(sign * poch * special::riemann_zeta(static_cast<double>(m + n) - 1.0) / factorial);
    partials.push_back(sum.value());
  }
  return accelerated_or_raw(partials, raw);
}

double zeta_gamma_series(std::size_t terms, bool raw) {
  std::vector<double> partials;
  engine::CompensatedSum sum;
  for (std::size_t k = 2; k <= terms; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    sum.add(sign * special::riemann_zeta(static_cast<double>(k)) / static_cast<double>(k));
    partials.push_back(sum.value());
  }
  return accelerated_or_raw(partials, raw);
}

}  // namespace fracsum
