#include <benchmark/benchmark.h>

#include <random>

#include "episource/exact.hpp"
#include "episource/generators.hpp"
#include "episource/simulate.hpp"

using namespace episource;

namespace {

const Graph& bench_graph() {
    static Graph g = [] {
        DcsbmConfig cfg;
        cfg.n = 5000;
        cfg.communities = 1;
        cfg.p_in = cfg.p_out = 1.0;
        cfg.unit_theta = true;
        cfg.target_mean_degree = 6.0;
        cfg.seed = 77;
        cfg.largest_component = true;
        return dcsbm(cfg);
    }();
    return g;
}

NodeSet snapshot_of_size(node_id k) {
    std::mt19937_64 rng(1234 + static_cast<std::uint64_t>(k));
    return simulate_until_size(bench_graph(), NodeSet::single(0), k, rng).infected_set();
}

} // namespace

// State count doubles per unit of |O|; wall time should track 2^|O|.
static void BM_ForwardSweep(benchmark::State& state) {
    const auto k = static_cast<node_id>(state.range(0));
    NodeSet o = snapshot_of_size(k);
    for (auto _ : state) {
        TransitionTable t = transition_prob_forward(bench_graph(), o);
        benchmark::DoNotOptimize(t.values.data());
    }
    state.SetComplexityN(std::int64_t{1} << k);
}
BENCHMARK(BM_ForwardSweep)->DenseRange(10, 20, 2)->Complexity(benchmark::oN);

static void BM_BackwardSweep(benchmark::State& state) {
    const auto k = static_cast<node_id>(state.range(0));
    NodeSet o = snapshot_of_size(k);
    for (auto _ : state) {
        TransitionTable t = transition_prob_backward(bench_graph(), o);
        benchmark::DoNotOptimize(t.values.data());
    }
}
BENCHMARK(BM_BackwardSweep)->DenseRange(6, 12, 2);

static void BM_Posterior(benchmark::State& state) {
    const auto k = static_cast<node_id>(state.range(0));
    NodeSet o = snapshot_of_size(k);
    for (auto _ : state) {
        Posterior p = posterior(bench_graph(), o);
        benchmark::DoNotOptimize(p.p.data());
    }
}
BENCHMARK(BM_Posterior)->Arg(8)->Arg(10);
