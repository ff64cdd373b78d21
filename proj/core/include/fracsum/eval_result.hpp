#pragma once

#include <cstddef>
#include <string_view>

namespace fracsum {

enum class Verdict {
  converged,         // plain summation met the tolerance
  accelerated,       // an extrapolated estimate met the tolerance
  bracketed,         // certified by the monotone floor/ceil bracket
  budget_exhausted,  // term or subdivision budget ran out above tolerance
  diverged,          // term magnitudes kept growing
};

std::string_view to_string(Verdict verdict) noexcept;

/// A numeric value with its error estimate and evaluation diagnostics.
struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t terms_used = 0;
  Verdict verdict = Verdict::converged;

  bool ok() const noexcept {
    return verdict == Verdict::converged || verdict == Verdict::accelerated ||
           verdict == Verdict::bracketed;
  }
};

}  // namespace fracsum
