// Block-diagonal evolution against the dense full-space map.

#include "oqw/scenarios.hpp"
#include "oqw/walk.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

namespace {

void BM_LineStep(benchmark::State& state) {
  const int window = static_cast<int>(state.range(0));
  auto sc = oqw::build_line_walk(std::acos(0.8), window);
  // Spread the walker over the window first so every node is occupied.
  auto current = sc.initial;
  for (int n = 0; n < window; ++n) current = oqw::step(sc.spec, current);
  for (auto _ : state) {
    auto next = oqw::step(sc.spec, current);
    benchmark::DoNotOptimize(next);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sc.spec.node_count()));
}
BENCHMARK(BM_LineStep)->RangeMultiplier(4)->Range(4, 1024);

void BM_LineFullMapStep(benchmark::State& state) {
  const int window = static_cast<int>(state.range(0));
  auto sc = oqw::build_line_walk(std::acos(0.8), window);
  auto current = sc.initial;
  for (int n = 0; n < window; ++n) current = oqw::step(sc.spec, current);
  const auto full = oqw::to_full_density(sc.spec, current);
  for (auto _ : state) {
    auto next = oqw::full_map_step(sc.spec, full);
    benchmark::DoNotOptimize(next);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(sc.spec.node_count()));
}
BENCHMARK(BM_LineFullMapStep)->RangeMultiplier(2)->Range(2, 16);

void BM_BellGridStep(benchmark::State& state) {
  const auto spec = oqw::build_bell_grid();
  auto current = oqw::WalkerState::localized(oqw::bell::kUpLeft,
                                             0.25 * oqw::ComplexMatrix::identity(4));
  for (auto _ : state) {
    auto next = oqw::step(spec, current);
    benchmark::DoNotOptimize(next);
  }
}
BENCHMARK(BM_BellGridStep);

void BM_DqcSteadyState(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<oqw::ComplexMatrix> unitaries;
  for (long t = 0; t < state.range(0); ++t) unitaries.push_back(oqw::random_unitary(2, rng));
  const auto sc = oqw::build_dqc_chain(unitaries, 0.75);
  for (auto _ : state) {
    auto result = oqw::find_steady_state(sc.spec, sc.initial, 1e-10, 1'000'000);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_DqcSteadyState)->Arg(4)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
