#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rainbow/instances.hpp"
#include "rainbow/matching.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/solver.hpp"

using namespace rainbow;

namespace {

ColouredMultigraph family(std::size_t n, std::uint64_t seed) {
  RandomInstanceSpec spec;
  spec.num_colours = n;
  spec.colour_count = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(n)));
  spec.multiplicity_cap = 1;
  spec.num_vertices = 2 * spec.colour_count;
  return generate_random(spec, Seed{seed});
}

void BM_greedy(benchmark::State& state) {
  const ColouredMultigraph g = family(static_cast<std::size_t>(state.range(0)), 1);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(greedy(g, Seed{seed++}));
  state.counters["edges"] = static_cast<double>(g.num_edges());
}
BENCHMARK(BM_greedy)->RangeMultiplier(2)->Range(8, 128);

void BM_hierarchy(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ColouredMultigraph g = family(n, 2);
  // One colour left free so the levels are non-trivial.
  const RainbowMatching full = greedy(g, Seed{2});
  const RainbowMatching m(g, std::vector<EdgeId>(full.edges().begin(), full.edges().end() - 1));
  const InstanceParams p = InstanceParams::defaults(n, 0.5);
  std::size_t levels = 0;
  for (auto _ : state) {
    const Analysis a = analyse(g, m, p);
    levels = a.hierarchy.m();
    benchmark::DoNotOptimize(levels);
  }
  state.counters["m"] = static_cast<double>(levels);
}
BENCHMARK(BM_hierarchy)->RangeMultiplier(2)->Range(8, 128);

void BM_solve(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ColouredMultigraph g = family(n, 3);
  SolveOptions o;
  o.params = InstanceParams::defaults(n, 0.5);
  std::size_t found = 0;
  for (auto _ : state) {
    const SolveReport r = solve(g, o);
    found = r.matching.size();
    benchmark::DoNotOptimize(found);
  }
  state.counters["deficit"] = static_cast<double>(n - found);
}
BENCHMARK(BM_solve)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMillisecond);

void BM_solve_latin(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ColouredMultigraph g = latin_to_graph(random_latin_square(n, Seed{4}));
  SolveOptions o;
  o.params = InstanceParams::defaults(n, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, o));
}
BENCHMARK(BM_solve_latin)->DenseRange(8, 32, 8)->Unit(benchmark::kMillisecond);

void BM_oracle_cyclic(benchmark::State& state) {
  const ColouredMultigraph g = latin_to_graph(cyclic_square(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(max_rainbow_matching(g));
}
BENCHMARK(BM_oracle_cyclic)->DenseRange(3, 7)->Unit(benchmark::kMillisecond);

void BM_transversal_cyclic(benchmark::State& state) {
  const LatinSquare s = cyclic_square(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(max_partial_transversal(s));
}
BENCHMARK(BM_transversal_cyclic)->DenseRange(3, 8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
