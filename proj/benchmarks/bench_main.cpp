#include <benchmark/benchmark.h>

#include "rentropy/convergence.hpp"
#include "rentropy/entropy.hpp"
#include "rentropy/law_spec.hpp"
#include "rentropy/quantiles.hpp"
#include "rentropy/special_fn.hpp"

namespace {

using namespace rentropy;

void BM_LnGamma(benchmark::State& state) {
  double x = 0.37;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::ln_gamma(x));
    x = x < 500.0 ? x * 1.7 : 0.37;
  }
}
BENCHMARK(BM_LnGamma);

void BM_RegGammaQuantile(benchmark::State& state) {
  const double lam = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(special::reg_gamma_quantile(lam, 0.75));
}
BENCHMARK(BM_RegGammaQuantile)->Arg(3)->Arg(30)->Arg(300);

void BM_RegBetaQuantile(benchmark::State& state) {
  const double b = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(special::reg_beta_quantile(0.5, b, 0.5));
}
BENCHMARK(BM_RegBetaQuantile)->Arg(3)->Arg(30)->Arg(300);

void BM_StudentQuantile(benchmark::State& state) {
  const auto law = ContinuousFamily::student(3.5, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(law.quantile(0.75));
}
BENCHMARK(BM_StudentQuantile);

void BM_DifferentialHQuadrature(benchmark::State& state) {
  const Law law = ContinuousFamily::student(0.8, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(differential_h_quadrature(law).value);
}
BENCHMARK(BM_DifferentialHQuadrature)->Unit(benchmark::kMillisecond);

void BM_BinomialHTilde(benchmark::State& state) {
  const Law law = DiscreteLaw::binomial(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(H_tilde(law));
}
BENCHMARK(BM_BinomialHTilde)->Arg(16)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_PoissonHExact(benchmark::State& state) {
  const double lam = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(poisson_H_exact(lam));
}
BENCHMARK(BM_PoissonHExact)->Arg(4)->Arg(256);

void BM_MixtureQuantile(benchmark::State& state) {
  const Law mix = parse_law("mix:q=2/3,(duniform:n=1,a=1/2),(uniform:a=1)");
  for (auto _ : state) benchmark::DoNotOptimize(quantile(mix, 0.9));
}
BENCHMARK(BM_MixtureQuantile);

void BM_TraceBinomial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trace_binomial(0.5).points.size());
}
BENCHMARK(BM_TraceBinomial)->Unit(benchmark::kMillisecond);

void BM_TracePoisson(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(trace_poisson().points.size());
}
BENCHMARK(BM_TracePoisson)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
