#pragma once

#include <optional>
#include <random>
#include <vector>

#include "episource/graph.hpp"

namespace episource {

/// Ordered infection sequence (sources first). `times` is populated only by
/// the timed simulator; it is nondecreasing with sources at time zero.
struct InfectionTrace {
    std::vector<node_id> order;
    std::vector<double> times;
    std::optional<double> beta;

    NodeSet infected_set() const { return NodeSet(order); }
    bool timed() const { return !times.empty(); }
};

/// True iff every non-source node in the order is adjacent to an earlier one.
bool is_permitted_permutation(const Graph& g, const std::vector<node_id>& order,
                              std::size_t num_sources = 1);

struct BoundaryProb {
    node_id node;
    double prob;
};

/// Jump-chain law of the next infected node given infected set I:
/// P(next = j) = vol(I, j) / vol(I, I^c) over boundary nodes j.
/// Returns nullopt when I is absorbed (no boundary edges).
std::optional<std::vector<BoundaryProb>> next_infection_distribution(const Graph& g,
                                                                     const NodeSet& I);

/// Runs the jump chain from `sources` until exactly `target_size` nodes are
/// infected. The stopped chain does not depend on the infection rate, so no
/// rate parameter exists on this path. Throws std::invalid_argument if
/// target_size exceeds the nodes reachable from the sources.
InfectionTrace simulate_until_size(const Graph& g, const NodeSet& sources, node_id target_size,
                                   std::mt19937_64& rng);

/// Gillespie simulation with per-boundary-edge rate beta, run until time
/// horizon t. Sources are infected at time zero.
InfectionTrace simulate_until_time(const Graph& g, const NodeSet& sources, double beta, double t,
                                   std::mt19937_64& rng);

} // namespace episource
