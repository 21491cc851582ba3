#include "rsh/closed_forms.hpp"
#include "rsh/simulator.hpp"

#include <benchmark/benchmark.h>

namespace {

using rsh::AlgorithmKind;
using rsh::ProblemInstance;
using rsh::Rational;

// e'R^t p0 by repeated vector-matrix products, exact.
void BM_OracleRational(benchmark::State& state) {
  const auto m = rsh::build_exact_chain(ProblemInstance::onemax(static_cast<int>(state.range(0))), AlgorithmKind::RLS);
  for (auto _ : state) benchmark::DoNotOptimize(rsh::expected_error_power(m, 200));
}
BENCHMARK(BM_OracleRational)->Arg(10)->Arg(20);

// The same value from the eigenvector sum; the pairs are built once per iteration.
void BM_SpectralRational(benchmark::State& state) {
  const auto r = rsh::reduce_to_nonoptimal(
      rsh::build_exact_chain(ProblemInstance::onemax(static_cast<int>(state.range(0))), AlgorithmKind::RLS));
  for (auto _ : state) benchmark::DoNotOptimize(rsh::expected_error_spectral(r.errors, r.transition, r.initial, 200));
}
BENCHMARK(BM_SpectralRational)->Arg(10)->Arg(20);

void BM_OracleFloatLongHorizon(benchmark::State& state) {
  const auto m = rsh::to_float(rsh::build_exact_chain(ProblemInstance::onemax(30), AlgorithmKind::RLS));
  for (auto _ : state) benchmark::DoNotOptimize(rsh::expected_error_power(m, static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_OracleFloatLongHorizon)->Arg(1000)->Arg(100000);

void BM_SpectralFloatLongHorizon(benchmark::State& state) {
  const auto r = rsh::reduce_to_nonoptimal(
      rsh::to_float(rsh::build_exact_chain(ProblemInstance::onemax(30), AlgorithmKind::RLS)));
  const rsh::SpectralErrorCurve<double> curve(r.errors, r.transition, r.initial);
  for (auto _ : state) benchmark::DoNotOptimize(curve(static_cast<std::uint64_t>(state.range(0))));
}
BENCHMARK(BM_SpectralFloatLongHorizon)->Arg(1000)->Arg(100000);

void BM_EnumerateEaChain(benchmark::State& state) {
  const auto p = ProblemInstance::knapsack(static_cast<int>(state.range(0)), rsh::ratio(1, 2));
  for (auto _ : state) benchmark::DoNotOptimize(rsh::build_exact_chain(p, AlgorithmKind::OnePlusOneEA));
}
BENCHMARK(BM_EnumerateEaChain)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_MonteCarlo(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const rsh::SimConfig cfg{ProblemInstance::onemax(n), AlgorithmKind::OnePlusOneEA, static_cast<std::uint64_t>(10 * n),
                           1000, 1, 1};
  for (auto _ : state) benchmark::DoNotOptimize(rsh::monte_carlo_curve(cfg));
  state.SetItemsProcessed(state.iterations() * 1000 * 10 * n);
}
BENCHMARK(BM_MonteCarlo)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
