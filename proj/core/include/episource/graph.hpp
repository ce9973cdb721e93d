#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "episource/types.hpp"

namespace episource {

/// Undirected simple graph in compressed sparse adjacency form.
///
/// Immutable after construction; neighbor lists are sorted ascending with no
/// duplicates and no self-loops, so the structure is safely shareable across
/// threads.
class Graph {
public:
    Graph() = default;

    /// Builds from an undirected edge list. Duplicate edges (in either
    /// orientation) are collapsed; self-loops are rejected. Node count is
    /// n, so isolated indices below n are retained.
    static Graph from_edges(node_id n, std::span<const std::pair<node_id, node_id>> edges);

    node_id num_nodes() const { return n_; }
    std::int64_t num_edges() const { return m_; }

    std::span<const node_id> neighbors(node_id v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    node_id degree(node_id v) const {
        return static_cast<node_id>(offsets_[v + 1] - offsets_[v]);
    }
    bool has_edge(node_id u, node_id v) const;

    /// Throws std::out_of_range unless 0 <= v < num_nodes().
    void check_node(node_id v) const;

private:
    node_id n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int64_t> offsets_{0};
    std::vector<node_id> adj_;
};

/// One parsed edge record together with its source line (for diagnostics).
struct EdgeRecord {
    long long a = 0;
    long long b = 0;
    int line = 0;
};

enum class Indexing { zero_based, one_based };

/// Builds a graph from raw edge records, e.g. a parsed edge-list file.
/// One-based records are shifted down; node count is max index + 1, so
/// isolated indices are retained. Self-loops and negative indices are
/// rejected with the offending line number.
Graph from_edge_list(std::span<const EdgeRecord> records, Indexing indexing);

/// vol(S, T): number of (ordered) adjacent pairs with one endpoint in S and
/// the other in T. S and T need not be disjoint.
std::int64_t cut_volume(const Graph& g, const NodeSet& S, const NodeSet& T);

/// vol(S, complement of S), computed without materializing the complement.
std::int64_t boundary_volume(const Graph& g, const NodeSet& S);

/// Number of common neighbors of i and j that lie inside S
/// (paths of length two i-r-j with r in S).
std::int64_t two_path_volume(const Graph& g, node_id i, node_id j, const NodeSet& S);

/// Hop distances from source; kUnreachable marks other components.
std::vector<std::int32_t> bfs_distances(const Graph& g, node_id source);

struct InducedConnectivity {
    bool is_connected = false;
    /// Nodes of S whose removal disconnects (a component of) the subgraph
    /// induced by S.
    NodeSet articulation_nodes;
};

/// Connectivity and articulation nodes of the subgraph induced by S,
/// in one biconnected-components pass. S must be nonempty.
InducedConnectivity induced_connectivity(const Graph& g, const NodeSet& S);

} // namespace episource
