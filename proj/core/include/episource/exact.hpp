#pragma once

#include <cstdint>
#include <vector>

#include "episource/graph.hpp"
#include "episource/ranking.hpp"
#include "episource/simulate.hpp"

namespace episource {

/// Fixed bit assignment for subsets of a snapshot O: bit i of a mask stands
/// for the i-th smallest node of O.
class SnapshotIndex {
public:
    explicit SnapshotIndex(const NodeSet& snapshot);

    int size() const { return static_cast<int>(nodes_.size()); }
    node_id node_at(int bit) const { return nodes_[static_cast<std::size_t>(bit)]; }
    /// Bit position of v within O, or -1.
    int bit_of(node_id v) const;
    std::uint64_t full_mask() const { return size() == 64 ? ~0ull : (1ull << size()) - 1; }

    std::uint64_t mask_of(const NodeSet& subset) const;
    NodeSet set_of(std::uint64_t mask) const;
    const std::vector<node_id>& nodes() const { return nodes_; }

private:
    std::vector<node_id> nodes_;
};

/// Exact infection transition probabilities rho(I -> O) for every nonempty
/// subset I of a snapshot O, laid out as a flat array over subset masks.
struct TransitionTable {
    SnapshotIndex index;
    std::vector<double> values;  // values[mask] = rho(I(mask) -> O)

    double value(std::uint64_t mask) const { return values[mask]; }
    double value(const NodeSet& subset) const { return values[index.mask_of(subset)]; }
    double singleton(node_id v) const;
};

/// Default snapshot-size cap for the exact table; the sweep has 2^|O| states
/// so cost and memory grow exponentially.
inline constexpr int kDefaultDpLimit = 24;

/// Fills the table by descending subset cardinality from rho(O -> O) = 1:
/// rho(I -> O) = sum over boundary nodes j of
///              [vol(I, j) / vol(I, I^c)] * rho(I + j -> O).
/// Subsets from which O is unreachable get exactly zero. O need not induce a
/// connected subgraph. Throws infeasible_error above max_size.
TransitionTable transition_prob_forward(const Graph& g, const NodeSet& snapshot,
                                        int max_size = kDefaultDpLimit);

/// Same table computed through the reverse recursion, growing the target set
/// from rho(I -> I) = 1:
/// rho(I -> O) = sum over j of rho(I -> O-j) * vol(O-j, j) / vol(O-j, (O-j)^c).
/// Kept for cross-validation; the sweep touches all nested subset pairs
/// (3^|O| states), hence the smaller default cap.
TransitionTable transition_prob_backward(const Graph& g, const NodeSet& snapshot,
                                         int max_size = 14);

/// Probability of observing an exact infection order (product of jump-chain
/// step probabilities). Returns 0 for a non-permitted order.
double path_probability(const Graph& g, const InfectionTrace& trace, std::size_t num_sources = 1);

/// Likelihood rho(sources -> O) by explicit enumeration of every permitted
/// infection order. Factorial cost; test-oracle sizes only.
double brute_force_likelihood(const Graph& g, node_id source, const NodeSet& snapshot,
                              int max_size = 8);
double brute_force_likelihood(const Graph& g, const NodeSet& sources, const NodeSet& snapshot,
                              int max_size = 8);

/// Posterior over single sources in O under a uniform prior:
/// p_i proportional to rho(i -> O).
struct Posterior {
    std::vector<node_id> nodes;  // sorted snapshot
    std::vector<double> p;       // sums to 1

    double prob_of(node_id v) const;
};

/// Throws no_source_error when every single-source likelihood is zero
/// (no node of O can explain the snapshot, e.g. disconnected G_O).
Posterior posterior(const Graph& g, const NodeSet& snapshot, int max_size = kDefaultDpLimit);

/// Posterior mode; ties go to the smallest node id.
node_id map_estimate(const Posterior& post);

/// Minimizer of the posterior-weighted geodesic distance
/// sum_j d_G(i, j) p_j over i in O; ties go to the smallest node id.
node_id distance_estimate(const Graph& g, const Posterior& post);

/// Ranking of O by ascending posterior-weighted distance (the companion
/// ranking of distance_estimate; its top entry is that estimate).
Ranking distance_rank(const Graph& g, const Posterior& post);

/// Ranking of O by descending posterior probability (midrank ties): the
/// estimator minimizing the expected rank of the true source.
Ranking rank_estimate(const Posterior& post);

/// Most likely s-node source set: argmax over I in O with |I| = s of
/// rho(I -> O). The sweep stops at cardinality s; ties resolve to the
/// lexicographically smallest node sequence.
NodeSet multi_source_map(const Graph& g, const NodeSet& snapshot, int source_count,
                         int max_size = kDefaultDpLimit);

} // namespace episource
