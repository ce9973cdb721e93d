#include "episource/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "episource/errors.hpp"

namespace episource {

NodeSet::NodeSet(std::vector<node_id> members) : members_(std::move(members)) {
    for (node_id v : members_) {
        if (v < 0) throw std::invalid_argument("NodeSet: negative node index " + std::to_string(v));
    }
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet::NodeSet(std::initializer_list<node_id> members)
    : NodeSet(std::vector<node_id>(members)) {}

NodeSet NodeSet::range(node_id n) {
    std::vector<node_id> v(static_cast<std::size_t>(n));
    for (node_id i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
    NodeSet s;
    s.members_ = std::move(v);
    return s;
}

bool NodeSet::contains(node_id v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
}

bool NodeSet::is_subset_of(const NodeSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
}

NodeSet NodeSet::with(node_id v) const {
    if (contains(v)) return *this;
    NodeSet out = *this;
    out.members_.insert(std::lower_bound(out.members_.begin(), out.members_.end(), v), v);
    return out;
}

NodeSet NodeSet::without(node_id v) const {
    NodeSet out = *this;
    auto it = std::lower_bound(out.members_.begin(), out.members_.end(), v);
    if (it != out.members_.end() && *it == v) out.members_.erase(it);
    return out;
}

NodeSet complement(const NodeSet& s, node_id n) {
    std::vector<node_id> out;
    out.reserve(static_cast<std::size_t>(n) - s.size());
    std::size_t pos = 0;
    for (node_id v = 0; v < n; ++v) {
        if (pos < s.size() && s[pos] == v) {
            ++pos;
        } else {
            out.push_back(v);
        }
    }
    return NodeSet(std::move(out));
}

Graph Graph::from_edges(node_id n, std::span<const std::pair<node_id, node_id>> edges) {
    if (n < 0) throw std::invalid_argument("Graph: negative node count");
    std::vector<std::pair<node_id, node_id>> dir;
    dir.reserve(edges.size() * 2);
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw std::out_of_range("Graph: edge endpoint out of range");
        if (a == b)
            throw std::invalid_argument("Graph: self-loop at node " + std::to_string(a));
        dir.emplace_back(a, b);
        dir.emplace_back(b, a);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    Graph g;
    g.n_ = n;
    g.m_ = static_cast<std::int64_t>(dir.size()) / 2;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto& [a, b] : dir) g.offsets_[static_cast<std::size_t>(a) + 1]++;
    for (node_id v = 0; v < n; ++v)
        g.offsets_[static_cast<std::size_t>(v) + 1] += g.offsets_[static_cast<std::size_t>(v)];
    g.adj_.resize(dir.size());
    std::size_t k = 0;
    for (auto& [a, b] : dir) g.adj_[k++] = b;  // already grouped by a, sorted by b
    return g;
}

bool Graph::has_edge(node_id u, node_id v) const {
    check_node(u);
    check_node(v);
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::check_node(node_id v) const {
    if (v < 0 || v >= n_)
        throw std::out_of_range("node index " + std::to_string(v) + " out of range [0, " +
                                std::to_string(n_) + ")");
}

Graph from_edge_list(std::span<const EdgeRecord> records, Indexing indexing) {
    const long long shift = indexing == Indexing::one_based ? 1 : 0;
    long long max_id = -1;
    for (const auto& r : records) {
        long long a = r.a - shift, b = r.b - shift;
        if (a < 0 || b < 0)
            throw parse_error("line " + std::to_string(r.line) + ": node index below " +
                              std::to_string(shift));
        if (a == b)
            throw parse_error("line " + std::to_string(r.line) + ": self-loop at node " +
                              std::to_string(r.a));
        max_id = std::max({max_id, a, b});
    }
    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(records.size());
    for (const auto& r : records)
        edges.emplace_back(static_cast<node_id>(r.a - shift), static_cast<node_id>(r.b - shift));
    return Graph::from_edges(static_cast<node_id>(max_id + 1), edges);
}

std::int64_t cut_volume(const Graph& g, const NodeSet& S, const NodeSet& T) {
    for (node_id v : S) g.check_node(v);
    for (node_id v : T) g.check_node(v);
    // Iterate edges out of the smaller side, membership-test against the other.
    const NodeSet& it_side = S.size() <= T.size() ? S : T;
    const NodeSet& probe = S.size() <= T.size() ? T : S;
    std::int64_t total = 0;
    for (node_id v : it_side) {
        for (node_id nb : g.neighbors(v)) {
            if (probe.contains(nb)) ++total;
        }
    }
    return total;
}

std::int64_t boundary_volume(const Graph& g, const NodeSet& S) {
    std::int64_t deg_sum = 0, internal = 0;
    for (node_id v : S) {
        g.check_node(v);
        deg_sum += g.degree(v);
        for (node_id nb : g.neighbors(v))
            if (S.contains(nb)) ++internal;
    }
    return deg_sum - internal;  // internal already counts both directions
}

std::int64_t two_path_volume(const Graph& g, node_id i, node_id j, const NodeSet& S) {
    g.check_node(i);
    g.check_node(j);
    std::int64_t count = 0;
    for (node_id r : g.neighbors(i)) {
        if (S.contains(r) && g.has_edge(r, j)) ++count;
    }
    return count;
}

std::vector<std::int32_t> bfs_distances(const Graph& g, node_id source) {
    g.check_node(source);
    std::vector<std::int32_t> dist(static_cast<std::size_t>(g.num_nodes()), kUnreachable);
    std::vector<node_id> queue;
    queue.reserve(static_cast<std::size_t>(g.num_nodes()));
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        node_id v = queue[head];
        std::int32_t dv = dist[static_cast<std::size_t>(v)];
        for (node_id nb : g.neighbors(v)) {
            if (dist[static_cast<std::size_t>(nb)] == kUnreachable) {
                dist[static_cast<std::size_t>(nb)] = dv + 1;
                queue.push_back(nb);
            }
        }
    }
    return dist;
}

namespace {

// Iterative articulation-point pass (Hopcroft-Tarjan lowpoint rule) over the
// subgraph induced by sorted node list `nodes`. Adjacency is looked up in g
// and filtered through the local index map.
struct ArticulationPass {
    const Graph& g;
    const std::vector<node_id>& nodes;

    int local(node_id v) const {
        auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
        if (it == nodes.end() || *it != v) return -1;
        return static_cast<int>(it - nodes.begin());
    }

    // Returns (component count, articulation flags).
    std::pair<int, std::vector<char>> run() const {
        const int k = static_cast<int>(nodes.size());
        std::vector<int> disc(k, -1), low(k, 0), parent(k, -1), child_count(k, 0);
        std::vector<char> is_art(k, 0);
        // Explicit DFS stack: (local vertex, index into its neighbor list).
        struct Frame {
            int v;
            std::size_t edge;
        };
        std::vector<Frame> stack;
        int timer = 0, components = 0;
        for (int root = 0; root < k; ++root) {
            if (disc[root] != -1) continue;
            ++components;
            disc[root] = low[root] = timer++;
            stack.push_back({root, 0});
            while (!stack.empty()) {
                auto& [v, edge] = stack.back();
                auto nbrs = g.neighbors(nodes[static_cast<std::size_t>(v)]);
                if (edge < nbrs.size()) {
                    node_id w_global = nbrs[edge++];
                    int w = local(w_global);
                    if (w < 0) continue;
                    if (disc[w] == -1) {
                        parent[w] = v;
                        ++child_count[v];
                        disc[w] = low[w] = timer++;
                        stack.push_back({w, 0});
                    } else if (w != parent[v]) {
                        low[v] = std::min(low[v], disc[w]);
                    }
                } else {
                    stack.pop_back();
                    int p = parent[v];
                    if (p != -1) {
                        low[p] = std::min(low[p], low[v]);
                        if (p != root && low[v] >= disc[p]) is_art[p] = 1;
                    }
                }
            }
            if (child_count[root] >= 2) is_art[root] = 1;
        }
        return {components, std::move(is_art)};
    }
};

} // namespace

InducedConnectivity induced_connectivity(const Graph& g, const NodeSet& S) {
    if (S.empty()) throw std::invalid_argument("induced_connectivity: empty node set");
    for (node_id v : S) g.check_node(v);
    ArticulationPass pass{g, S.members()};
    auto [components, is_art] = pass.run();
    std::vector<node_id> arts;
    for (std::size_t i = 0; i < S.size(); ++i)
        if (is_art[i]) arts.push_back(S[i]);
    return {components == 1, NodeSet(std::move(arts))};
}

} // namespace episource
