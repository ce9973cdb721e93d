#include "episource/greedy.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace episource {

namespace {

// Elimination-time view of the induced subgraph: local adjacency over O plus
// alive flags, with within-set degrees and the boundary volume maintained
// incrementally (removal costs O(deg)).
struct PeelState {
    const std::vector<node_id>& nodes;            // sorted O
    std::vector<std::int64_t> adj_off;            // induced adjacency, CSR
    std::vector<int> adj_flat;                    // local indices
    std::vector<char> alive;
    std::vector<std::int64_t> deg_in;             // degree within the alive set
    std::vector<std::int64_t> deg_full;           // degree in g
    std::int64_t boundary;                        // vol(S, S^c)
    int alive_count;

    PeelState(const Graph& g, const NodeSet& snapshot)
        : nodes(snapshot.members()),
          adj_off(snapshot.size() + 1, 0),
          alive(snapshot.size(), 1),
          deg_in(snapshot.size(), 0),
          deg_full(snapshot.size(), 0),
          boundary(0),
          alive_count(static_cast<int>(snapshot.size())) {
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            node_id v = nodes[i];
            g.check_node(v);
            deg_full[i] = g.degree(v);
            for (node_id nb : g.neighbors(v)) {
                auto it = std::lower_bound(nodes.begin(), nodes.end(), nb);
                if (it != nodes.end() && *it == nb)
                    adj_flat.push_back(static_cast<int>(it - nodes.begin()));
            }
            adj_off[i + 1] = static_cast<std::int64_t>(adj_flat.size());
            deg_in[i] = adj_off[i + 1] - adj_off[i];
            boundary += deg_full[i] - deg_in[i];
        }
    }

    std::span<const int> induced_neighbors(int i) const {
        return {adj_flat.data() + adj_off[static_cast<std::size_t>(i)],
                adj_flat.data() + adj_off[static_cast<std::size_t>(i) + 1]};
    }

    // vol(S - j, (S - j)^c) after hypothetically removing j.
    std::int64_t boundary_without(int j) const {
        return boundary - deg_full[static_cast<std::size_t>(j)] + 2 * deg_in[static_cast<std::size_t>(j)];
    }

    void remove(int j) {
        alive[static_cast<std::size_t>(j)] = 0;
        boundary = boundary_without(j);
        for (int nb : induced_neighbors(j))
            if (alive[static_cast<std::size_t>(nb)]) --deg_in[static_cast<std::size_t>(nb)];
        --alive_count;
    }

    // Scratch for the articulation pass, reused across elimination steps.
    struct Frame {
        int v;
        std::size_t edge;
    };
    mutable std::vector<int> disc, low, parent, child_count;
    mutable std::vector<char> is_art;
    mutable std::vector<Frame> stack;

    // Articulation flags of the alive induced subgraph; also reports whether
    // it is connected.
    std::pair<bool, const std::vector<char>*> articulation() const {
        const int k = static_cast<int>(nodes.size());
        disc.assign(static_cast<std::size_t>(k), -1);
        low.assign(static_cast<std::size_t>(k), 0);
        parent.assign(static_cast<std::size_t>(k), -1);
        child_count.assign(static_cast<std::size_t>(k), 0);
        is_art.assign(static_cast<std::size_t>(k), 0);
        stack.clear();
        int timer = 0, components = 0;
        for (int root = 0; root < k; ++root) {
            if (!alive[static_cast<std::size_t>(root)] || disc[static_cast<std::size_t>(root)] != -1)
                continue;
            ++components;
            disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
            stack.push_back({root, 0});
            while (!stack.empty()) {
                auto& [v, edge] = stack.back();
                const auto nbrs = induced_neighbors(v);
                if (edge < nbrs.size()) {
                    int w = nbrs[edge++];
                    if (!alive[static_cast<std::size_t>(w)]) continue;
                    if (disc[static_cast<std::size_t>(w)] == -1) {
                        parent[static_cast<std::size_t>(w)] = v;
                        ++child_count[static_cast<std::size_t>(v)];
                        disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
                        stack.push_back({w, 0});
                    } else if (w != parent[static_cast<std::size_t>(v)]) {
                        low[static_cast<std::size_t>(v)] =
                            std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(w)]);
                    }
                } else {
                    stack.pop_back();
                    int p = parent[static_cast<std::size_t>(v)];
                    if (p != -1) {
                        low[static_cast<std::size_t>(p)] =
                            std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                        if (p != root && low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)])
                            is_art[static_cast<std::size_t>(p)] = 1;
                    }
                }
            }
            if (child_count[static_cast<std::size_t>(root)] >= 2) is_art[static_cast<std::size_t>(root)] = 1;
        }
        return {components == 1, &is_art};
    }
};

} // namespace

EliminationLog ge_eliminate(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("ge_eliminate: empty snapshot");
    PeelState state(g, snapshot);
    {
        auto [connected, arts] = state.articulation();
        (void)arts;
        if (!connected)
            throw std::invalid_argument(
                "ge_eliminate: the snapshot induces a disconnected subgraph; "
                "run the elimination per component");
    }
    EliminationLog log;
    log.removed.reserve(snapshot.size() - 1);
    const int k = static_cast<int>(snapshot.size());

    while (state.alive_count > 1) {
        auto [connected, art_flags] = state.articulation();
        const std::vector<char>& is_art = *art_flags;
        assert(connected);
        (void)connected;
        // Candidates: alive non-articulation nodes. Score = num/den with
        // num = vol(S - j, j), den = vol(S - j, (S - j)^c). den == 0 forces
        // num == 0 here; such 0/0 candidates lose unless nothing else exists,
        // then within-set degree breaks the stalemate.
        int best = -1;
        std::int64_t best_num = 0, best_den = 1;
        bool all_degenerate = true;
        for (int j = 0; j < k; ++j) {
            if (!state.alive[static_cast<std::size_t>(j)] || is_art[static_cast<std::size_t>(j)])
                continue;
            const std::int64_t num = state.deg_in[static_cast<std::size_t>(j)];
            const std::int64_t den = state.boundary_without(j);
            if (den != 0 || num != 0) all_degenerate = false;
            else continue;  // 0/0: score -inf
            // Compare num/den > best_num/best_den exactly; den == 0 with
            // num > 0 counts as +inf.
            bool better;
            if (den == 0) {
                better = best == -1 || best_den != 0;  // +inf beats finite; inf ties keep first
            } else if (best == -1) {
                better = true;
            } else if (best_den == 0) {
                better = false;
            } else {
                better = num * best_den > best_num * den;
            }
            if (better) {
                best = j;
                best_num = num;
                best_den = den;
            }
        }
        if (best == -1 && all_degenerate) {
            // Every candidate is 0/0: fall back to within-set degree.
            std::int64_t best_deg = -1;
            for (int j = 0; j < k; ++j) {
                if (!state.alive[static_cast<std::size_t>(j)] || is_art[static_cast<std::size_t>(j)])
                    continue;
                if (state.deg_in[static_cast<std::size_t>(j)] > best_deg) {
                    best_deg = state.deg_in[static_cast<std::size_t>(j)];
                    best = j;
                }
            }
        }
        assert(best != -1);  // a connected graph always has a non-articulation node
        const double score =
            best_den == 0
                ? (best_num > 0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity())
                : static_cast<double>(best_num) / static_cast<double>(best_den);
        log.removed.push_back({state.nodes[static_cast<std::size_t>(best)], score});
        state.remove(best);
    }
    for (int j = 0; j < k; ++j)
        if (state.alive[static_cast<std::size_t>(j)]) log.survivor = state.nodes[static_cast<std::size_t>(j)];
    return log;
}

Ranking ge_rank(const Graph& g, const NodeSet& snapshot) {
    EliminationLog log = ge_eliminate(g, snapshot);
    std::vector<node_id> nodes;
    std::vector<double> scores;
    nodes.reserve(snapshot.size());
    scores.reserve(snapshot.size());
    nodes.push_back(log.survivor);
    scores.push_back(0.0);
    const auto steps = static_cast<double>(log.removed.size());
    for (std::size_t t = 0; t < log.removed.size(); ++t) {
        nodes.push_back(log.removed[t].node);
        // Removed at step t+1 of |O|-1: earlier removals rank lower.
        scores.push_back(static_cast<double>(t + 1) - steps - 1.0);
    }
    return make_ranking(nodes, scores, /*descending=*/true);
}

} // namespace episource
