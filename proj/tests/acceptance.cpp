// Acceptance suite: runs every release criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "episource/baselines.hpp"
#include "episource/evaluation.hpp"
#include "episource/exact.hpp"
#include "episource/generators.hpp"
#include "episource/graph.hpp"
#include "episource/greedy.hpp"
#include "episource/mean_field.hpp"
#include "episource/simulate.hpp"
#include "test_util.hpp"

using namespace episource;
using namespace episource::testutil;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void fail(const std::string& why) {
        pass = false;
        if (!note.empty()) note += "; ";
        note += why;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// ---- 1: forward and backward sweeps agree ---------------------------------

Outcome criterion_forward_backward() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(101);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const node_id n = 3 + static_cast<node_id>(rng() % 8);  // up to 10
        Graph g = random_connected_graph(n, 0.3, rng);
        // Every fourth instance exercises the largest admissible snapshot.
        const std::size_t k =
            trial % 4 == 0 ? static_cast<std::size_t>(n)
                           : 1 + static_cast<std::size_t>(rng() % std::min<node_id>(n, 12));
        NodeSet o = random_subset(n, k, rng);
        TransitionTable f = transition_prob_forward(g, o);
        TransitionTable b = transition_prob_backward(g, o);
        for (std::uint64_t mask = 1; mask <= f.index.full_mask(); ++mask)
            worst = std::max(worst, std::abs(f.value(mask) - b.value(mask)));
    }
    if (worst > 1e-12) out.fail("max entrywise gap " + fmt(worst) + " > 1e-12");
    const double dt = seconds_since(t0);
    if (dt >= 30.0) out.fail("runtime " + fmt(dt) + "s >= 30s");
    return out;
}

// ---- 2: sweep equals path-enumeration likelihood ---------------------------

Outcome criterion_likelihood_oracle() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(102);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const node_id n = 3 + static_cast<node_id>(rng() % 7);  // up to 9
        Graph g = random_graph(n, 0.45, rng);
        const std::size_t k =
            trial % 4 == 0 ? static_cast<std::size_t>(std::min<node_id>(n, 8))
                           : 1 + static_cast<std::size_t>(rng() % std::min<node_id>(n, 8));
        NodeSet o = random_subset(n, k, rng);
        TransitionTable t = transition_prob_forward(g, o);
        for (node_id v : o)
            worst = std::max(worst, std::abs(t.singleton(v) - brute_force_likelihood(g, v, o)));
    }
    if (worst > 1e-10) out.fail("max gap vs enumeration " + fmt(worst) + " > 1e-10");
    const double dt = seconds_since(t0);
    if (dt >= 60.0) out.fail("runtime " + fmt(dt) + "s >= 60s");
    return out;
}

// ---- 3: simulator frequency matches the exact transition probability -------

Outcome criterion_simulator_consistency() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    Graph p4 = path_graph(4);
    const NodeSet target{0, 1, 2};
    std::mt19937_64 rng(103);
    const int runs = 100000;
    int hits = 0;
    for (int i = 0; i < runs; ++i) {
        InfectionTrace t = simulate_until_size(p4, NodeSet{1}, 3, rng);
        if (t.infected_set() == target) ++hits;
    }
    const double freq = static_cast<double>(hits) / runs;
    const double sigma = std::sqrt(0.75 * 0.25 / runs);
    if (std::abs(freq - 0.75) > 3 * sigma)
        out.fail("freq " + fmt(freq) + " outside 0.75 +- " + fmt(3 * sigma));
    const double dt = seconds_since(t0);
    if (dt >= 10.0) out.fail("runtime " + fmt(dt) + "s >= 10s");
    out.note = "freq " + fmt(freq);
    return out;
}

// ---- 4: partition of unity over fixed-size snapshots -----------------------

Outcome criterion_partition_of_unity() {
    Outcome out;
    std::vector<Graph> graphs;
    for (node_id n = 2; n <= 7; ++n) {
        graphs.push_back(path_graph(n));
        graphs.push_back(cycle_graph(n));
        graphs.push_back(complete_graph(n));
        if (n >= 3) graphs.push_back(star_graph(n - 1));
    }
    std::mt19937_64 rng(104);
    for (int i = 0; i < 20; ++i)
        graphs.push_back(random_connected_graph(4 + static_cast<node_id>(rng() % 4), 0.35, rng));

    double worst = 0.0;
    for (const Graph& g : graphs) {
        const node_id n = g.num_nodes();
        for (node_id src = 0; src < n; ++src) {
            for (node_id k = 1; k <= n; ++k) {
                double total = 0.0;
                for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
                    if (std::popcount(mask) != static_cast<int>(k) || !(mask >> src & 1)) continue;
                    std::vector<node_id> nodes;
                    for (node_id v = 0; v < n; ++v)
                        if (mask >> v & 1) nodes.push_back(v);
                    total += transition_prob_forward(g, NodeSet(nodes)).singleton(src);
                }
                worst = std::max(worst, std::abs(total - 1.0));
            }
        }
    }
    if (worst > 1e-10) out.fail("max |sum - 1| = " + fmt(worst) + " > 1e-10");
    return out;
}

// ---- 5: mean-field system equals the scaled normal equations ---------------

Outcome criterion_mean_field_oracle() {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(105);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const node_id n = 5 + static_cast<node_id>(rng() % 8);  // 5..12
        Graph g = random_graph(n, 0.4, rng);
        const std::size_t k =
            4 + static_cast<std::size_t>(rng() % (std::min<node_id>(n, 12) - 3));
        NodeSet o = random_subset(n, k, rng);
        MeanFieldSystem sys = build_system(g, o);
        NormalEquations ne = brute_force_normal_equations(g, o);
        const double scale = std::pow(2.0, static_cast<double>(k) - 4.0);
        auto dense = sys.dense();
        for (std::size_t i = 0; i < k; ++i) {
            worst = std::max(worst, std::abs(sys.z()[i] - ne.qtr[i] / scale));
            for (std::size_t j = 0; j < k; ++j)
                worst = std::max(worst, std::abs(dense[i * k + j] - ne.qtq[i * k + j] / scale));
        }
    }
    if (worst > 1e-9) out.fail("max entrywise gap " + fmt(worst) + " > 1e-9");
    const double dt = seconds_since(t0);
    if (dt >= 60.0) out.fail("runtime " + fmt(dt) + "s >= 60s");
    return out;
}

// ---- 6: triangle snapshot closed form --------------------------------------

Outcome criterion_triangle_closed_form() {
    // The direct least-squares path (|O| = 3) against hand-checked values:
    // S has diagonal 12 and off-diagonal 2 under the 2^(|O|-4) scale; every
    // transition probability out of a triangle subset is 1, so b = 1 fits the
    // recursion with zero residual and z = S 1 = 16.
    Outcome out;
    Graph k3 = complete_graph(3);
    NodeSet o{0, 1, 2};
    auto dense = build_system(k3, o).dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double expect = i == j ? 12.0 : 2.0;
            if (std::abs(dense[static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(j)] -
                         expect) > 1e-12)
                out.fail("S mismatch at " + std::to_string(i) + "," + std::to_string(j));
        }
    MeanFieldSystem sys = build_system(k3, o);
    for (double zi : sys.z())
        if (std::abs(zi - 16.0) > 1e-12) out.fail("z entry " + fmt(zi) + " != 16");
    MfaSolution sol = mfa_solve(k3, o);
    for (double b : sol.b)
        if (std::abs(b - 1.0) > 1e-10) out.fail("b entry " + fmt(b) + " != 1");
    Ranking r = mfa_rank(k3, o);
    for (node_id v : o)
        if (r.rank_of(v) != 2.0) out.fail("ranking not uniform");
    return out;
}

// ---- 7: greedy elimination determinism and invariants ----------------------

Outcome criterion_greedy_invariants() {
    Outcome out;
    Graph p4 = path_graph(4);
    EliminationLog log = ge_eliminate(p4, NodeSet{0, 1, 2});
    if (log.survivor != 0) out.fail("path survivor " + std::to_string(log.survivor) + " != 0");
    if (log.removed.size() != 2 || log.removed[0].node != 2 || log.removed[1].node != 1)
        out.fail("path elimination order is not (2, 1)");

    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 500 && out.pass; ++trial) {
        const node_id n = 6 + static_cast<node_id>(rng() % 9);
        Graph g = random_connected_graph(n, 0.25, rng);
        const node_id k = std::min<node_id>(n, 3 + static_cast<node_id>(rng() % 8));
        auto [snapshot, src] = random_snapshot(g, k, rng);
        (void)src;
        EliminationLog l = ge_eliminate(g, snapshot);
        NodeSet current = snapshot;
        for (const auto& step : l.removed) {
            // Candidate set = non-articulation nodes, cross-checked against
            // remove-and-BFS; removals keep the remainder connected.
            auto fast = induced_connectivity(g, current);
            NodeSet naive = naive_articulation(g, current);
            if (!(fast.articulation_nodes == naive)) {
                out.fail("articulation mismatch at trial " + std::to_string(trial));
                break;
            }
            if (naive.contains(step.node)) {
                out.fail("removed an articulation node at trial " + std::to_string(trial));
                break;
            }
            current = current.without(step.node);
            if (!naive_induced_connected(g, current)) {
                out.fail("intermediate set disconnected at trial " + std::to_string(trial));
                break;
            }
        }
        if (out.pass && !(current == NodeSet::single(l.survivor)))
            out.fail("survivor does not match the log");
    }
    return out;
}

// ---- 8: regular-tree overlap of RC/JC with the exact posterior -------------

Outcome criterion_regular_tree_overlap() {
    Outcome out;
    Graph tree = regular_tree(3, 5);
    ExperimentConfig cfg;
    cfg.methods = {Method::bayes, Method::rc, Method::jc};
    cfg.sizes = {4, 5, 6, 7, 8};
    cfg.replicates = 200;
    cfg.seed = 108;
    cfg.normalization = Normalization::snapshot;
    ExperimentResult res = run_experiment(tree, cfg);
    auto mean_of = [&](Method m, node_id k) {
        for (const auto& row : res.rows)
            if (row.method == m && row.size == k) return row.mean_rank;
        return -1.0;
    };
    double worst_rc = 0.0, worst_jc = 0.0;
    for (node_id k : cfg.sizes) {
        worst_rc = std::max(worst_rc, std::abs(mean_of(Method::rc, k) - mean_of(Method::bayes, k)));
        worst_jc = std::max(worst_jc, std::abs(mean_of(Method::jc, k) - mean_of(Method::bayes, k)));
    }
    if (worst_rc > 0.05) out.fail("max |mean(rc) - mean(bayes)| = " + fmt(worst_rc) + " > 0.05");
    if (worst_jc > 0.05) out.fail("max |mean(jc) - mean(bayes)| = " + fmt(worst_jc) + " > 0.05");
    if (!out.pass)
        out.note += " [expected: the exact posterior ranking strictly dominates RC/JC on "
                    "finite trees, where leaf boundaries carry likelihood information "
                    "these centralities ignore; the gap exceeds 0.05 for |O| >= 5 under "
                    "any tie convention]";
    return out;
}

// ---- 9: random-guess calibration -------------------------------------------

Outcome criterion_random_calibration() {
    Outcome out;
    std::mt19937_64 rng(109);
    NodeSet o = NodeSet::range(50);
    std::uniform_int_distribution<node_id> pick(0, 49);
    double mean = 0.0;
    const int reps = 500;
    for (int i = 0; i < reps; ++i) {
        Ranking r = random_rank(o, rng);
        mean += normalized_rank(r, pick(rng), 50.0);
    }
    mean /= reps;
    if (std::abs(mean - 0.5) > 0.05) out.fail("mean " + fmt(mean) + " outside 0.5 +- 0.05");
    out.note = "mean " + fmt(mean);
    return out;
}

// ---- 10: runtime ordering at snapshot size 10 ------------------------------

Outcome criterion_runtime_ordering() {
    Outcome out;
    DcsbmConfig gc;
    gc.n = 5000;
    gc.communities = 1;
    gc.p_in = 1.0;
    gc.p_out = 1.0;
    gc.unit_theta = true;
    gc.target_mean_degree = 4.0;
    gc.seed = 110;
    gc.largest_component = true;
    Graph g = dcsbm(gc);

    ExperimentConfig cfg;
    cfg.methods = {Method::bayes, Method::ge, Method::mfa, Method::rc, Method::jc, Method::dc};
    cfg.sizes = {10};
    cfg.replicates = 250;
    cfg.seed = 110;
    cfg.threads = 1;
    ExperimentResult res = run_experiment(g, cfg);
    auto ms_of = [&](Method m) {
        for (const auto& row : res.rows)
            if (row.method == m) return row.mean_ms;
        return -1.0;
    };
    const double bo = ms_of(Method::bayes);
    const double slowest_approx = std::max({ms_of(Method::ge), ms_of(Method::mfa),
                                            ms_of(Method::rc), ms_of(Method::jc)});
    if (bo < 5.0 * slowest_approx)
        out.fail("bayes " + fmt(bo) + "ms < 5 x max(ge,mfa,rc,jc) " + fmt(slowest_approx) + "ms");
    const double dc = ms_of(Method::dc);
    for (Method m : {Method::bayes, Method::ge, Method::mfa, Method::rc, Method::jc})
        if (dc > ms_of(m)) out.fail("dc is not the fastest");
    for (Method m : cfg.methods)
        out.note += std::string(method_name(m)) + " " + fmt(ms_of(m)) + "ms ";
    return out;
}

// ---- 11: scalability smoke test --------------------------------------------

Outcome criterion_scalability() {
    Outcome out;
    DcsbmConfig gc;
    gc.n = 20000;
    gc.communities = 3;
    gc.p_in = 0.5;
    gc.p_out = 0.02;
    gc.pareto_alpha = 2.0;
    gc.pareto_threshold = 1.0;
    gc.target_mean_degree = 66.0;
    gc.seed = 111;
    gc.largest_component = true;
    Graph g = dcsbm(gc);

    std::mt19937_64 rng(111);
    auto [snapshot, src] = random_snapshot(g, 300, rng);
    (void)src;

    auto t0 = std::chrono::steady_clock::now();
    Ranking ge = ge_rank(g, snapshot);
    const double ge_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    Ranking mfa = mfa_rank(g, snapshot);
    const double mfa_s = seconds_since(t0);
    if (ge.size() != 300 || mfa.size() != 300) out.fail("ranking size mismatch");
    if (ge_s >= 10.0) out.fail("ge took " + fmt(ge_s) + "s >= 10s");
    if (mfa_s >= 10.0) out.fail("mfa took " + fmt(mfa_s) + "s >= 10s");
    out.note = "n=" + std::to_string(g.num_nodes()) + ", ge " + fmt(ge_s) + "s, mfa " +
               fmt(mfa_s) + "s";
    return out;
}

// ---- 12: rumor centrality equals permutation counting on trees -------------

namespace {
std::int64_t count_permitted(const Graph& g, const NodeSet& snapshot, NodeSet prefix) {
    if (prefix.size() == snapshot.size()) return 1;
    std::int64_t total = 0;
    for (node_id v : snapshot) {
        if (prefix.contains(v)) continue;
        for (node_id nb : g.neighbors(v)) {
            if (prefix.contains(nb)) {
                total += count_permitted(g, snapshot, prefix.with(v));
                break;
            }
        }
    }
    return total;
}
} // namespace

Outcome criterion_rumor_exact_on_trees() {
    Outcome out;
    std::mt19937_64 rng(112);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        Graph tree = random_tree(8 + static_cast<node_id>(rng() % 33),
                                 4000 + static_cast<std::uint64_t>(trial));
        const node_id k = 2 + static_cast<node_id>(rng() % 7);
        auto [snapshot, src] = random_snapshot(tree, k, rng);
        (void)src;
        Ranking r = rumor_centrality_rank(tree, snapshot);
        for (const auto& e : r.entries()) {
            const std::int64_t expect = count_permitted(tree, snapshot, NodeSet::single(e.node));
            if (std::llround(std::exp(e.score)) != expect) {
                out.fail("count mismatch at trial " + std::to_string(trial) + " node " +
                         std::to_string(e.node));
                break;
            }
        }
    }
    return out;
}

// ---- 13: truncated multi-source sweep --------------------------------------

Outcome criterion_multi_source() {
    Outcome out;
    Graph p4 = path_graph(4);
    if (!(multi_source_map(p4, NodeSet{0, 1, 2}, 2) == NodeSet{0, 1}))
        out.fail("path two-source MAP is not {0, 1}");

    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 100 && out.pass; ++trial) {
        const node_id n = 4 + static_cast<node_id>(rng() % 7);
        Graph g = random_connected_graph(n, 0.3, rng);
        const std::size_t k =
            2 + static_cast<std::size_t>(rng() % (std::min<node_id>(n, 10) - 1));
        NodeSet o = random_subset(n, k, rng);
        const int s = 1 + static_cast<int>(rng() % o.size());
        NodeSet got = multi_source_map(g, o, s);

        // Brute force over all s-subsets of the full table: the truncated
        // sweep must reproduce the argmax and the lexicographic tie-break.
        double best = -1.0;
        NodeSet best_set;
        TransitionTable table = transition_prob_forward(g, o);
        for (std::uint64_t mask = 1; mask <= table.index.full_mask(); ++mask) {
            if (std::popcount(mask) != s) continue;
            NodeSet cand = table.index.set_of(mask);
            const double v = table.value(mask);
            if (v > best ||
                (v == best && std::lexicographical_compare(
                                  cand.members().begin(), cand.members().end(),
                                  best_set.members().begin(), best_set.members().end()))) {
                best = v;
                best_set = cand;
            }
        }
        if (!(got == best_set)) {
            out.fail("subset mismatch at trial " + std::to_string(trial));
            continue;
        }
        // And the attained value matches independent path enumeration
        // (mathematical ties may round either way, so compare values).
        if (k <= 7) {
            double bf_best = -1.0;
            for (std::uint64_t mask = 1; mask <= table.index.full_mask(); ++mask) {
                if (std::popcount(mask) != s) continue;
                bf_best = std::max(bf_best, brute_force_likelihood(g, table.index.set_of(mask), o));
            }
            if (std::abs(table.value(got) - bf_best) > 1e-10)
                out.fail("value mismatch at trial " + std::to_string(trial));
        }
    }
    return out;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"forward/backward recursion equivalence", criterion_forward_backward},
        {"exact likelihood vs path enumeration", criterion_likelihood_oracle},
        {"simulator matches exact snapshot law", criterion_simulator_consistency},
        {"partition of unity over snapshots", criterion_partition_of_unity},
        {"mean-field system vs normal equations", criterion_mean_field_oracle},
        {"triangle mean-field closed form", criterion_triangle_closed_form},
        {"greedy elimination determinism/invariants", criterion_greedy_invariants},
        {"regular-tree overlap of rc/jc with bayes", criterion_regular_tree_overlap},
        {"random-guess calibration", criterion_random_calibration},
        {"runtime ordering at size 10", criterion_runtime_ordering},
        {"ge/mfa scalability smoke test", criterion_scalability},
        {"rumor centrality exact on trees", criterion_rumor_exact_on_trees},
        {"multi-source truncated sweep", criterion_multi_source},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out = criteria[i].run();
        const double dt = seconds_since(t0);
        if (!out.pass) ++failures;
        std::printf("[%2zu] %-44s %s  (%.2f s)%s%s\n", i + 1, criteria[i].name,
                    out.pass ? "PASS" : "FAIL", dt, out.note.empty() ? "" : "  ",
                    out.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
