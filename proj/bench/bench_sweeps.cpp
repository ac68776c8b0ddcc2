// Serial reference vs OpenMP driver for the heavy verification sweeps.
// Arg 0 runs Execution::Serial, arg 1 Execution::Parallel.

#include <random>

#include <benchmark/benchmark.h>

#include "qig/flow_engine.hpp"
#include "qig/monotonicity.hpp"

using namespace qig;

namespace {

Execution mode(const benchmark::State& state) { return state.range(0) == 0 ? Execution::Serial : Execution::Parallel; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel x" + std::to_string(max_threads()));
}

std::vector<Vec3> points(std::size_t n) {
  std::mt19937_64 rng(3);
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(sample_ball_point(rng, 0.1, 0.9, 0.2));
  return out;
}

void BM_MonotonicityScan(benchmark::State& state) {
  ScanOptions opts;
  opts.samples = 2000;
  opts.execution = mode(state);
  const auto spec = MonotoneFunctionSpec::wigner_yanase();
  for (auto _ : state) benchmark::DoNotOptimize(scan_monotonicity(spec, opts).min_eigenvalue);
  label(state);
}

void BM_CommutatorRelations(benchmark::State& state) {
  const auto pts = points(50);
  const auto spec = MonotoneFunctionSpec::family_a(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(verify_commutator_relations(spec, pts, 1e-4, 1e-6, mode(state)).max_error);
  label(state);
}

void BM_GradientCrossCheck(benchmark::State& state) {
  const auto pts = points(1000);
  const auto spec = MonotoneFunctionSpec::bkm();
  for (auto _ : state) benchmark::DoNotOptimize(cross_validate_gradient(spec, pts, 1, mode(state)).max_error());
  label(state);
}

void BM_ActionAxioms(benchmark::State& state) {
  AxiomOptions opts;
  opts.samples = 1000;
  opts.execution = mode(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_left_action_alpha(0.5, opts).max_compatibility_deviation);
    benchmark::DoNotOptimize(verify_left_action_bkm(opts).max_compatibility_deviation);
  }
  label(state);
}

void BM_FlowBatch(benchmark::State& state) {
  std::vector<FlowCase> cases;
  const TracelessObservable a(0.3, -0.5, 0.8);
  for (const auto& v : points(16))
    cases.push_back({rescaled_gradient_field(a, 1.0), ActionSpec::alpha(1.0), a, TracelessObservable(), 0.5 * v, 1.0,
                     1000});
  for (auto _ : state) benchmark::DoNotOptimize(compare_batch(cases, mode(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_MonotonicityScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutatorRelations)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GradientCrossCheck)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActionAxioms)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FlowBatch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
