#include <benchmark/benchmark.h>

#include "bmx/extremal.hpp"
#include "bmx/graph.hpp"
#include "bmx/graphs.hpp"
#include "bmx/matroid.hpp"
#include "bmx/morphism.hpp"

namespace {

using namespace bmx;

void BM_Chi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matroid m = lift(circuit(5), n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(chi(m));
}
BENCHMARK(BM_Chi)->DenseRange(6, 10, 2);

void BM_CanonicalKey(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matroid m = lift(free_matroid(2), n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(compute_canonical_key(m));
}
BENCHMARK(BM_CanonicalKey)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_ContainsFano(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Matroid host = bb(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(contains(host, pg(3)));
}
BENCHMARK(BM_ContainsFano)->DenseRange(4, 8, 2);

void BM_ContainsOctahedron(benchmark::State& state) {
  const Matroid pattern = recoordinatize(graphic(SimpleGraph::octahedron()));
  const Matroid host = bb(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(contains(host, pattern));
}
BENCHMARK(BM_ContainsOctahedron)->DenseRange(5, 8);

void BM_ExSearchBoseBurton(benchmark::State& state) {
  const Family f = Family::of({pg(3)});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ex_search(f, n).value);
}
BENCHMARK(BM_ExSearchBoseBurton)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

void BM_DecompositionOctahedron(benchmark::State& state) {
  const Family f = Family::of({graphic(SimpleGraph::octahedron())});
  for (auto _ : state) benchmark::DoNotOptimize(decomposition_family(f).size());
}
BENCHMARK(BM_DecompositionOctahedron)->Unit(benchmark::kMillisecond);

void BM_ChromaticPetersen(benchmark::State& state) {
  const SimpleGraph g = SimpleGraph::petersen();
  for (auto _ : state) benchmark::DoNotOptimize(chromatic_number(g));
}
BENCHMARK(BM_ChromaticPetersen);

}  // namespace

BENCHMARK_MAIN();
