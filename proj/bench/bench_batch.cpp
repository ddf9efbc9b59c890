#include <benchmark/benchmark.h>

#include "confsphere/batch.hpp"
#include "confsphere/sampling.hpp"

using namespace confsphere;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_IntegrateAll(benchmark::State& state) {
  Sampler rng(1);
  std::vector<PhasePoint> starts;
  for (int k = 0; k < 16; ++k) starts.push_back(rng.phase_point(3));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_all(starts, 1.0, 1e-3, 10, exec_of(state)));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_IntegrateAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RelationAll(benchmark::State& state) {
  Sampler rng(2);
  std::vector<PhasePoint> pts;
  for (int k = 0; k < 1000; ++k) pts.push_back(rng.phase_point(4));
  for (auto _ : state) benchmark::DoNotOptimize(relation_all(pts, exec_of(state)));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_RelationAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MiddleSlotAll(benchmark::State& state) {
  Sampler rng(3);
  std::vector<CurveJet> jets;
  for (int k = 0; k < 1000; ++k) jets.push_back(enforce_stationary_alpha1(rng.curve_jet(3, 4)));
  for (auto _ : state) benchmark::DoNotOptimize(middle_slot_all(jets, exec_of(state)));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_MiddleSlotAll)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FamilyJets(benchmark::State& state) {
  Sampler rng(4);
  const SolutionFamily f = rng.transformed_spiral(3, 0.3, -1, 1);
  std::vector<double> ts;
  for (int k = 0; k <= 1000; ++k) ts.push_back(-1.0 + 0.002 * k);
  for (auto _ : state) benchmark::DoNotOptimize(family_jets(f, ts, 6, exec_of(state)));
  state.SetLabel(state.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_FamilyJets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
