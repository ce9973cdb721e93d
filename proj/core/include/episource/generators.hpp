#pragma once

#include <cstdint>
#include <random>

#include "episource/graph.hpp"

namespace episource {

/// Rooted tree in which the root has `degree` children and every other
/// internal node has `degree - 1` children, down to the given depth.
/// Node 0 is the root; children are labeled in breadth-first order.
Graph regular_tree(int degree, int depth);

/// Uniformly random labeled tree on n nodes (Pruefer-sequence decode).
Graph random_tree(node_id n, std::uint64_t seed);

/// Degree-corrected planted-partition model. Nodes are split into K
/// near-equal blocks; degree propensities theta are i.i.d. Pareto; the edge
/// probability for i < j is min(1, c * theta_i * theta_j * P_ij) with
/// P_ij = p_in inside a block and p_out across blocks. The global scale c
/// is set from the sampled theta so the expected mean degree (ignoring the
/// clip) equals target_mean_degree.
struct DcsbmConfig {
    node_id n = 0;
    int communities = 1;
    double p_in = 0.5;
    double p_out = 0.02;
    double pareto_alpha = 2.0;
    double pareto_threshold = 1.0;
    double target_mean_degree = 10.0;
    std::uint64_t seed = 0;
    /// Force theta == 1 (degenerate Erdos-Renyi-style case).
    bool unit_theta = false;
    /// Return only the largest connected component (relabeled densely).
    bool largest_component = false;

    void validate() const;
};

Graph dcsbm(const DcsbmConfig& cfg);

/// Largest connected component, nodes relabeled densely preserving order.
Graph largest_component(const Graph& g);

} // namespace episource
