#include <benchmark/benchmark.h>

#include <random>

#include "asnoc/mapping.hpp"
#include "asnoc/optim/clique.hpp"
#include "asnoc/optim/ilp.hpp"
#include "asnoc/optim/mincost_flow.hpp"
#include "asnoc/routing.hpp"

namespace {

asnoc::CommGraph random_graph(int n_cores, int n_flows, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 10.0);
    std::uniform_real_distribution<double> bw(50.0, 400.0);
    asnoc::CommGraph g;
    for (int i = 0; i < n_cores; ++i)
        g.cores.push_back({i, "c" + std::to_string(i), {pos(rng), pos(rng)}});
    std::uniform_int_distribution<int> pick(0, n_cores - 1);
    while (static_cast<int>(g.flows.size()) < n_flows) {
        const int a = pick(rng), b = pick(rng);
        if (a == b) continue;
        g.flows.push_back({a, b, bw(rng), 4});
    }
    return g;
}

void BM_CoreMapping(benchmark::State& state) {
    const asnoc::CommGraph g = random_graph(12, 14, 7);
    asnoc::DesignConfig cfg;
    cfg.k = static_cast<int>(state.range(0));
    const auto switches = asnoc::place_switches(g, 4);
    for (auto _ : state) {
        auto links = asnoc::map_cores_both(g, switches, cfg);
        benchmark::DoNotOptimize(links);
    }
}
BENCHMARK(BM_CoreMapping)->Arg(1)->Arg(2);

void BM_FlowIlp(benchmark::State& state) {
    const asnoc::CommGraph g = random_graph(8, 8, 11);
    asnoc::DesignConfig cfg;
    cfg.k = static_cast<int>(state.range(0));
    const auto switches = asnoc::place_switches(g, 4);
    const auto links = asnoc::map_cores_both(g, switches, cfg);
    for (auto _ : state) {
        auto out = asnoc::allocate_flows(g, switches, *links, cfg);
        benchmark::DoNotOptimize(out);
    }
}
BENCHMARK(BM_FlowIlp)->Arg(1)->Arg(2);

void BM_MaxClique(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const int n = static_cast<int>(state.range(0));
    asnoc::optim::UGraph g(n);
    std::bernoulli_distribution edge(0.5);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (edge(rng)) g.add_edge(i, j);
    for (auto _ : state) {
        auto c = asnoc::optim::max_clique(g);
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_MaxClique)->Arg(16)->Arg(24);

}  // namespace

BENCHMARK_MAIN();
