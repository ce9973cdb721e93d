#pragma once

#include <vector>

#include "episource/graph.hpp"
#include "episource/ranking.hpp"

namespace episource {

/// Record of a backward greedy elimination run: the removal sequence with the
/// winning single-step backward transition ratio at each step, plus the node
/// left standing. |removed| = |O| - 1, and every intermediate set induces a
/// connected subgraph.
struct EliminationLog {
    struct Step {
        node_id node;
        double score;  // vol(S - j, j) / vol(S - j, (S - j)^c) of the winner
    };
    std::vector<Step> removed;
    node_id survivor = -1;
};

/// Peels the snapshot down to one node. Each step removes, among the
/// non-articulation nodes of the current induced subgraph, the node whose
/// removal leaves the most plausible predecessor set (highest backward
/// single-step ratio); ties go to the smallest node id. Requires the
/// subgraph induced by O to be connected.
EliminationLog ge_eliminate(const Graph& g, const NodeSet& snapshot);

/// Ranking in reverse elimination order: survivor first, first-removed node
/// last. Scores are the (negated) count of elimination steps left after the
/// node was removed, so the order is reproducible from the log.
Ranking ge_rank(const Graph& g, const NodeSet& snapshot);

} // namespace episource
