#include <benchmark/benchmark.h>

#include "fracsum/calculus.hpp"
#include "fracsum/continuations.hpp"
#include "fracsum/extensions.hpp"
#include "fracsum/frac_sum.hpp"
#include "fracsum/special.hpp"

namespace {

using namespace fracsum;

FracSumRequest request(const char* src, double limit, double x) {
  FracSumRequest req;
  req.summand = make_summand(src, limit);
  req.upper_x = x;
  return req;
}

void BM_FracSum(benchmark::State& state, const char* src, double limit) {
  const auto req = request(src, limit, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(frac_sum(req).value);
}
BENCHMARK_CAPTURE(BM_FracSum, reciprocal, "1/k", 0.0);
BENCHMARK_CAPTURE(BM_FracSum, inverse_square, "1/k^2", 0.0);
BENCHMARK_CAPTURE(BM_FracSum, exponential, "exp(-k)", 0.0);
BENCHMARK_CAPTURE(BM_FracSum, alternating, "(-1)^(k+1)/k", 0.0);
BENCHMARK_CAPTURE(BM_FracSum, sinc, "sin(k)/k", 0.0);

void BM_FracProd(benchmark::State& state) {
  const auto req = request("(1+1/k)^k", 2.718281828459045, 2.5);
  for (auto _ : state) benchmark::DoNotOptimize(frac_prod(req).value);
}
BENCHMARK(BM_FracProd);

void BM_Hurwitz(benchmark::State& state) {
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::hurwitz_zeta(2.5, a));
    a = a > 10.0 ? 0.1 : a + 0.37;
  }
}
BENCHMARK(BM_Hurwitz);

void BM_Digamma(benchmark::State& state) {
  double x = -9.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::digamma(x));
    x = x > 20.0 ? -9.7 : x + 0.61;
  }
}
BENCHMARK(BM_Digamma);

void BM_TaylorUpper(benchmark::State& state) {
  const auto f = make_summand("exp(-k)*cos(k)", 0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(taylor_upper(f, 1.0, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_TaylorUpper)->Arg(4)->Arg(12)->Arg(24);

void BM_IntegrateUpper(benchmark::State& state) {
  const auto f = make_summand("1/k", 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(integrate_upper(f, 1.0, 0.0, 1.0).value);
}
BENCHMARK(BM_IntegrateUpper);

void BM_AltHarmonicRoots(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(alt_harmonic_roots(static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_AltHarmonicRoots)->Arg(5)->Arg(50);

void BM_Faulhaber(benchmark::State& state) {
  const auto series = taylor_series(expr::parse("exp(k)"), 0.0, static_cast<std::size_t>(state.range(0)));
  faulhaber_polynomial(0, 1.0);  // builds the cached rational table outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(faulhaber_sum(series, 1.0, 7.5).value);
}
BENCHMARK(BM_Faulhaber)->Arg(20)->Arg(40)->Arg(80);

void BM_ApproxCurve(benchmark::State& state) {
  const auto f = make_summand("1/k", 0.0);
  for (auto _ : state) benchmark::DoNotOptimize(em_approx_curve(f, 1.0, 6.0, 0.05));
}
BENCHMARK(BM_ApproxCurve);

void BM_Antiderivative(benchmark::State& state) {
  const auto f = make_summand("1/k", 0.0);
  const auto F = make_summand("ln(k)", std::nullopt);
  for (auto _ : state) benchmark::DoNotOptimize(sum_antiderivative(f, F, 1.0, 2.5).value);
}
BENCHMARK(BM_Antiderivative);

}  // namespace

BENCHMARK_MAIN();
