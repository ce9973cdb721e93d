#pragma once

#include <random>

#include "episource/graph.hpp"
#include "episource/ranking.hpp"

namespace episource {

/// Rumor centrality over the infected subgraph: score(v) is the log count of
/// node orderings of G_O spreading out from v, computed from subtree sizes of
/// a BFS spanning tree rooted at v (exact when G_O is a tree, the usual
/// heuristic otherwise). Requires G_O connected; ranked descending.
Ranking rumor_centrality_rank(const Graph& g, const NodeSet& snapshot);

/// Jordan center: eccentricity of v inside G_O (max hop distance to other
/// infected nodes), ranked ascending. Requires G_O connected.
Ranking jordan_center_rank(const Graph& g, const NodeSet& snapshot);

/// Full-graph degree, ranked descending.
Ranking degree_centrality_rank(const Graph& g, const NodeSet& snapshot);

/// Uniformly random permutation of the snapshot (control).
Ranking random_rank(const NodeSet& snapshot, std::mt19937_64& rng);

} // namespace episource
