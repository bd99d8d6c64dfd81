#include <benchmark/benchmark.h>

#include "cnslab/dynamics.hpp"
#include "cnslab/lame.hpp"
#include "cnslab/scenario.hpp"
#include "cnslab/spectral.hpp"

using namespace cnslab;

namespace {

State make(int dim, int n) {
  Scenario sc;
  sc.kind = ScenarioKind::manufactured;
  sc.amplitude = 0.3;
  return make_scenario(sc, GridSpec::cube(dim, n), PhysParams{});
}

void BM_Forward(benchmark::State& st) {
  const State s = make(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(forward(s.rho));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.rho.size()));
}
BENCHMARK(BM_Forward)->Args({2, 64})->Args({2, 128})->Args({2, 256})->Args({3, 32});

void BM_Rhs(benchmark::State& st) {
  const State s = make(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  for (auto _ : st) benchmark::DoNotOptimize(rhs(s));
  st.SetItemsProcessed(st.iterations() * static_cast<long>(s.rho.size()));
}
BENCHMARK(BM_Rhs)->Args({2, 64})->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_Step(benchmark::State& st) {
  const State s = make(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const double dt = compute_dt(s, 0.4);
  for (auto _ : st) benchmark::DoNotOptimize(step(s, dt));
}
BENCHMARK(BM_Step)->Args({2, 64})->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

void BM_LameSolve(benchmark::State& st) {
  const State s = make(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const VectorField f = gradient(s.p);
  for (auto _ : st) benchmark::DoNotOptimize(solve_lame(f, s.params));
}
BENCHMARK(BM_LameSolve)->Args({2, 128})->Args({3, 32})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
