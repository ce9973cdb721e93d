#include <benchmark/benchmark.h>

#include <random>

#include "episource/baselines.hpp"
#include "episource/generators.hpp"
#include "episource/greedy.hpp"
#include "episource/mean_field.hpp"
#include "episource/simulate.hpp"

using namespace episource;

namespace {

// Sparse graph comparable to the scalability target.
const Graph& bench_graph() {
    static Graph g = [] {
        DcsbmConfig cfg;
        cfg.n = 20000;
        cfg.communities = 3;
        cfg.p_in = 0.5;
        cfg.p_out = 0.02;
        cfg.target_mean_degree = 66.0;
        cfg.seed = 99;
        cfg.largest_component = true;
        return dcsbm(cfg);
    }();
    return g;
}

NodeSet snapshot_of_size(node_id k) {
    std::mt19937_64 rng(4321 + static_cast<std::uint64_t>(k));
    return simulate_until_size(bench_graph(), NodeSet::single(1), k, rng).infected_set();
}

} // namespace

// The peel runs |O| - 1 articulation passes over the induced subgraph.
static void BM_GreedyElimination(benchmark::State& state) {
    NodeSet o = snapshot_of_size(static_cast<node_id>(state.range(0)));
    for (auto _ : state) {
        Ranking r = ge_rank(bench_graph(), o);
        benchmark::DoNotOptimize(r.entries().data());
    }
}
BENCHMARK(BM_GreedyElimination)->Arg(50)->Arg(100)->Arg(200)->Arg(300);

static void BM_MeanField(benchmark::State& state) {
    NodeSet o = snapshot_of_size(static_cast<node_id>(state.range(0)));
    for (auto _ : state) {
        Ranking r = mfa_rank(bench_graph(), o);
        benchmark::DoNotOptimize(r.entries().data());
    }
}
BENCHMARK(BM_MeanField)->Arg(50)->Arg(100)->Arg(200)->Arg(300)->Arg(1000);

static void BM_RumorCentrality(benchmark::State& state) {
    NodeSet o = snapshot_of_size(static_cast<node_id>(state.range(0)));
    for (auto _ : state) {
        Ranking r = rumor_centrality_rank(bench_graph(), o);
        benchmark::DoNotOptimize(r.entries().data());
    }
}
BENCHMARK(BM_RumorCentrality)->Arg(100)->Arg(300);

static void BM_JordanCenter(benchmark::State& state) {
    NodeSet o = snapshot_of_size(static_cast<node_id>(state.range(0)));
    for (auto _ : state) {
        Ranking r = jordan_center_rank(bench_graph(), o);
        benchmark::DoNotOptimize(r.entries().data());
    }
}
BENCHMARK(BM_JordanCenter)->Arg(100)->Arg(300);

static void BM_DegreeCentrality(benchmark::State& state) {
    NodeSet o = snapshot_of_size(static_cast<node_id>(state.range(0)));
    for (auto _ : state) {
        Ranking r = degree_centrality_rank(bench_graph(), o);
        benchmark::DoNotOptimize(r.entries().data());
    }
}
BENCHMARK(BM_DegreeCentrality)->Arg(100)->Arg(300);

static void BM_SimulateUntilSize(benchmark::State& state) {
    std::mt19937_64 rng(7);
    for (auto _ : state) {
        InfectionTrace t = simulate_until_size(bench_graph(), NodeSet::single(1),
                                               static_cast<node_id>(state.range(0)), rng);
        benchmark::DoNotOptimize(t.order.data());
    }
}
BENCHMARK(BM_SimulateUntilSize)->Arg(100)->Arg(300);
