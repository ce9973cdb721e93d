#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "episource/errors.hpp"
#include "episource/generators.hpp"
#include "episource/mean_field.hpp"
#include "test_util.hpp"

using namespace episource;
using namespace episource::testutil;

namespace {

// Scale matching the closed form: S = Q'Q / 2^(|O|-4), z = Q'r / 2^(|O|-4).
double oracle_scale(std::size_t k) { return std::pow(2.0, static_cast<double>(k) - 4.0); }

} // namespace

TEST_CASE("triangle snapshot: closed-form system and solution") {
    // All transition probabilities out of K3 subsets equal 1, so the product
    // fit is exact with every factor 1: the least-squares residual vanishes.
    Graph k3 = complete_graph(3);
    NodeSet o{0, 1, 2};
    MeanFieldSystem sys = build_system(k3, o);
    auto dense = sys.dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(dense[static_cast<std::size_t>(i) * 3 + static_cast<std::size_t>(j)] ==
                  doctest::Approx(i == j ? 12.0 : 2.0));
    for (double zi : sys.z()) CHECK(zi == doctest::Approx(16.0));

    MfaSolution sol = mfa_solve(k3, o);
    for (double b : sol.b) CHECK(b == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sol.residual_norm <= 1e-10);
    CHECK(!sol.flagged);

    Ranking r = mfa_rank(k3, o);
    for (node_id v : o) CHECK(r.rank_of(v) == 2.0);  // symmetric: all midrank
}

TEST_CASE("snapshot covering a whole component: z reduces to (1'u) u + 2u") {
    // Triangle plus a detached edge; O = the triangle, so v = 0.
    Graph g = make_graph(5, {{0, 1}, {0, 2}, {1, 2}, {3, 4}});
    MeanFieldSystem sys = build_system(g, NodeSet{0, 1, 2});
    const double sum_u = 6.0;
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(sys.z()[i] == doctest::Approx(sum_u * 2.0 + 2.0 * 2.0));  // 16
}

TEST_CASE("matrix form matches the enumerated normal equations") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 50; ++trial) {
        const node_id n = 5 + static_cast<node_id>(rng() % 8);  // 5..12
        Graph g = random_graph(n, 0.4, rng);
        const std::size_t k =
            4 + static_cast<std::size_t>(rng() % (std::min<node_id>(n, 12) - 3));
        NodeSet o = random_subset(n, k, rng);
        MeanFieldSystem sys = build_system(g, o);
        NormalEquations ne = brute_force_normal_equations(g, o);
        const double scale = oracle_scale(k);
        auto dense = sys.dense();
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(std::abs(sys.z()[i] - ne.qtr[i] / scale) <= 1e-9);
            for (std::size_t j = 0; j < k; ++j)
                CHECK(std::abs(dense[i * k + j] - ne.qtq[i * k + j] / scale) <= 1e-9);
        }
    }
}

TEST_CASE("small snapshots use the direct least-squares path with the same scale") {
    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = random_graph(7, 0.5, rng);
        const std::size_t k = 1 + static_cast<std::size_t>(rng() % 3);
        NodeSet o = random_subset(7, k, rng);
        MeanFieldSystem sys = build_system(g, o);
        NormalEquations ne = brute_force_normal_equations(g, o);
        const double scale = oracle_scale(k);
        auto dense = sys.dense();
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(std::abs(sys.z()[i] - ne.qtr[i] / scale) <= 1e-9);
            for (std::size_t j = 0; j < k; ++j)
                CHECK(std::abs(dense[i * k + j] - ne.qtq[i * k + j] / scale) <= 1e-9);
        }
    }
}

TEST_CASE("S is symmetric") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 200; ++trial) {
        const node_id n = 4 + static_cast<node_id>(rng() % 9);
        Graph g = random_graph(n, 0.35, rng);
        const std::size_t k = 1 + static_cast<std::size_t>(rng() % n);
        NodeSet o = random_subset(n, k, rng);
        auto dense = build_system(g, o).dense();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                CHECK(dense[i * k + j] == dense[j * k + i]);
    }
}

TEST_CASE("scaling S and z together leaves the solution unchanged") {
    // The dense path solves S b = z exactly, so any common positive rescale
    // of both sides cancels; spot-check via the normal-equation route by
    // comparing the |O| <= 3 direct path against an unscaled solve.
    Graph p4 = path_graph(4);
    NodeSet o{0, 1, 2};
    MfaSolution sol = mfa_solve(p4, o);
    // Hand solution of the unscaled normal equations (Q'Q) b = Q'r.
    CHECK(sol.b[0] == doctest::Approx(5.0 / 3).epsilon(1e-12));
    CHECK(sol.b[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(sol.b[2] == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(sol.residual_norm <= 1e-8 * sol.z_norm);
}

TEST_CASE("solver reports the residual and flags degenerate systems") {
    // A snapshot of two isolated-in-O nodes gives a zero row/column: the
    // system is singular but consistent, so the fallback path must engage.
    Graph g = make_graph(6, {{0, 1}, {2, 3}, {4, 5}});
    NodeSet o{0, 2, 4};  // pairwise non-adjacent: u = 0
    MfaSolution sol = mfa_solve(g, o);
    CHECK(sol.flagged);
    for (double b : sol.b) CHECK(std::abs(b) <= 1e-9);  // minimum-norm solution of 0 b = 0
    Ranking r = mfa_rank(g, o);
    for (node_id v : o) CHECK(r.rank_of(v) == 2.0);
}

TEST_CASE("singleton snapshot") {
    Graph p4 = path_graph(4);
    Ranking r = mfa_rank(p4, NodeSet{1});
    CHECK(r.size() == 1);
    CHECK(r.top() == 1);
}

TEST_CASE("node relabeling permutes the ranking consistently") {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 25; ++trial) {
        const node_id n = 8;
        Graph g = random_connected_graph(n, 0.3, rng);
        auto [o, src] = random_snapshot(g, 5, rng);
        (void)src;
        // Random permutation pi of node labels.
        std::vector<node_id> pi(static_cast<std::size_t>(n));
        for (node_id v = 0; v < n; ++v) pi[static_cast<std::size_t>(v)] = v;
        std::shuffle(pi.begin(), pi.end(), rng);
        std::vector<std::pair<node_id, node_id>> edges;
        for (node_id v = 0; v < n; ++v)
            for (node_id nb : g.neighbors(v))
                if (v < nb)
                    edges.emplace_back(pi[static_cast<std::size_t>(v)], pi[static_cast<std::size_t>(nb)]);
        Graph h = Graph::from_edges(n, edges);
        std::vector<node_id> o2;
        for (node_id v : o) o2.push_back(pi[static_cast<std::size_t>(v)]);

        // Scores permute with the labels. (Midrank groups can differ when
        // mathematically tied entries round differently under the permuted
        // factorization, so the invariant is stated on the solution values.)
        MfaSolution sa = mfa_solve(g, o);
        MfaSolution sb = mfa_solve(h, NodeSet(o2));
        for (std::size_t i = 0; i < o.size(); ++i) {
            const node_id relabeled = pi[static_cast<std::size_t>(o[i])];
            const std::size_t j = static_cast<std::size_t>(
                std::lower_bound(sb.nodes.begin(), sb.nodes.end(), relabeled) -
                sb.nodes.begin());
            REQUIRE(sb.nodes[j] == relabeled);
            CHECK(sa.b[i] == doctest::Approx(sb.b[j]).epsilon(1e-9));
        }
    }
}

TEST_CASE("snapshots beyond the dense limit take the matrix-free path") {
    Graph tree = random_tree(2600, 31);
    std::mt19937_64 rng(31);
    auto [o, src] = random_snapshot(tree, kMfaDenseLimit + 100, rng);
    (void)src;
    MfaSolution sol = mfa_solve(tree, o);
    CHECK(std::string(sol.solver) == "pcg");
    CHECK(!sol.flagged);
    CHECK(sol.residual_norm <= 1e-8 * sol.z_norm);
    Ranking r = mfa_rank(tree, o);
    CHECK(r.size() == o.size());
}

TEST_CASE("oversized oracle request is refused") {
    Graph g = path_graph(20);
    CHECK_THROWS_AS(brute_force_normal_equations(g, NodeSet::range(15)), infeasible_error);
}
