#include <benchmark/benchmark.h>

#include "amen/eval.hpp"
#include "amen/synthetic.hpp"
#include "bench_common.hpp"

using namespace amen;

static void StructurePerturbation(benchmark::State& state) {
    auto g = bench::block_graph(4000, 200, 0.2, 8, 1000, 59);
    auto nb = boundary_of(g, bench::first_nodes(200));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        auto out = perturb_structure(g, nb, 0.3, rng);
        benchmark::DoNotOptimize(out.edge_count());
    }
}
BENCHMARK(StructurePerturbation);

static void AttributePerturbation(benchmark::State& state) {
    auto g = bench::block_graph(4000, 200, 0.2, 16, 5000, 61);
    auto nb = boundary_of(g, bench::first_nodes(200));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        auto out = perturb_attributes(g, nb, 0.3, rng);
        benchmark::DoNotOptimize(out.attribute_count());
    }
}
BENCHMARK(AttributePerturbation);

static void SyntheticGeneration(benchmark::State& state) {
    SyntheticConfig cfg;
    cfg.communities = static_cast<std::size_t>(state.range(0));
    cfg.seed = 67;
    for (auto _ : state) {
        auto s = generate_planted(cfg);
        benchmark::DoNotOptimize(s.graph.edge_count());
    }
}
BENCHMARK(SyntheticGeneration)->Arg(25)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);
