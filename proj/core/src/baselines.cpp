#include "episource/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace episource {

namespace {

// Local adjacency of the subgraph induced by the (sorted) snapshot.
std::vector<std::vector<int>> induced_adjacency(const Graph& g, const std::vector<node_id>& nodes) {
    std::vector<std::vector<int>> adj(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        g.check_node(nodes[i]);
        for (node_id nb : g.neighbors(nodes[i])) {
            auto it = std::lower_bound(nodes.begin(), nodes.end(), nb);
            if (it != nodes.end() && *it == nb) adj[i].push_back(static_cast<int>(it - nodes.begin()));
        }
    }
    return adj;
}

} // namespace

Ranking rumor_centrality_rank(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("rumor_centrality_rank: empty snapshot");
    const auto& nodes = snapshot.members();
    const int k = static_cast<int>(nodes.size());
    auto adj = induced_adjacency(g, nodes);

    std::vector<double> log_table(static_cast<std::size_t>(k) + 1, 0.0);
    for (int t = 1; t <= k; ++t) log_table[static_cast<std::size_t>(t)] = std::log(static_cast<double>(t));
    double log_factorial = 0.0;
    for (int t = 2; t <= k; ++t) log_factorial += log_table[static_cast<std::size_t>(t)];

    std::vector<int> parent(static_cast<std::size_t>(k)), order;
    std::vector<std::int64_t> subtree(static_cast<std::size_t>(k));
    std::vector<char> seen(static_cast<std::size_t>(k));
    std::vector<double> scores(static_cast<std::size_t>(k));
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k));

    for (int root = 0; root < k; ++root) {
        std::fill(seen.begin(), seen.end(), 0);
        order.clear();
        order.push_back(root);
        seen[static_cast<std::size_t>(root)] = 1;
        parent[static_cast<std::size_t>(root)] = -1;
        for (std::size_t head = 0; head < order.size(); ++head) {
            int v = order[head];
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    order.push_back(w);
                }
            }
        }
        if (static_cast<int>(order.size()) != k)
            throw std::invalid_argument(
                "rumor_centrality_rank: the snapshot induces a disconnected subgraph");
        std::fill(subtree.begin(), subtree.end(), std::int64_t{1});
        for (std::size_t i = order.size(); i-- > 1;)
            subtree[static_cast<std::size_t>(parent[static_cast<std::size_t>(order[i])])] +=
                subtree[static_cast<std::size_t>(order[i])];
        // Summing logs over the sorted size multiset keeps symmetric roots
        // bitwise tied.
        std::copy(subtree.begin(), subtree.end(), sizes.begin());
        std::sort(sizes.begin(), sizes.end());
        double log_sizes = 0.0;
        for (std::int64_t t : sizes) log_sizes += log_table[static_cast<std::size_t>(t)];
        scores[static_cast<std::size_t>(root)] = log_factorial - log_sizes;
    }
    return make_ranking(nodes, scores, /*descending=*/true);
}

Ranking jordan_center_rank(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("jordan_center_rank: empty snapshot");
    const auto& nodes = snapshot.members();
    const int k = static_cast<int>(nodes.size());
    auto adj = induced_adjacency(g, nodes);
    std::vector<int> dist(static_cast<std::size_t>(k));
    std::vector<int> queue;
    std::vector<double> ecc(static_cast<std::size_t>(k), 0.0);
    for (int root = 0; root < k; ++root) {
        std::fill(dist.begin(), dist.end(), -1);
        queue.clear();
        queue.push_back(root);
        dist[static_cast<std::size_t>(root)] = 0;
        int reached = 1, far = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (int w : adj[static_cast<std::size_t>(v)]) {
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    far = std::max(far, dist[static_cast<std::size_t>(w)]);
                    queue.push_back(w);
                    ++reached;
                }
            }
        }
        if (reached != k)
            throw std::invalid_argument(
                "jordan_center_rank: the snapshot induces a disconnected subgraph");
        ecc[static_cast<std::size_t>(root)] = static_cast<double>(far);
    }
    return make_ranking(nodes, ecc, /*descending=*/false);
}

Ranking degree_centrality_rank(const Graph& g, const NodeSet& snapshot) {
    if (snapshot.empty()) throw std::invalid_argument("degree_centrality_rank: empty snapshot");
    const auto& nodes = snapshot.members();
    std::vector<double> deg(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        g.check_node(nodes[i]);
        deg[i] = static_cast<double>(g.degree(nodes[i]));
    }
    return make_ranking(nodes, deg, /*descending=*/true);
}

Ranking random_rank(const NodeSet& snapshot, std::mt19937_64& rng) {
    if (snapshot.empty()) throw std::invalid_argument("random_rank: empty snapshot");
    std::vector<node_id> shuffled = snapshot.members();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    std::vector<RankEntry> entries(shuffled.size());
    for (std::size_t i = 0; i < shuffled.size(); ++i)
        entries[i] = {shuffled[i], -static_cast<double>(i), static_cast<double>(i + 1)};
    return Ranking(std::move(entries));
}

} // namespace episource
