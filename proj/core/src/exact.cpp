#include "episource/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "episource/errors.hpp"

namespace episource {

namespace {

int popcount(std::uint64_t x) { return std::popcount(x); }
int lowest_bit(std::uint64_t x) { return std::countr_zero(x); }

// Per-bit adjacency masks within O plus full-graph degrees; shared setup for
// the subset sweeps.
struct SnapshotAdjacency {
    std::vector<std::uint64_t> adj;   // adj[i]: O-neighbors of node_at(i)
    std::vector<std::int64_t> degree; // full-graph degree of node_at(i)

    SnapshotAdjacency(const Graph& g, const SnapshotIndex& idx) {
        const int k = idx.size();
        adj.assign(static_cast<std::size_t>(k), 0);
        degree.assign(static_cast<std::size_t>(k), 0);
        for (int i = 0; i < k; ++i) {
            node_id v = idx.node_at(i);
            g.check_node(v);
            degree[static_cast<std::size_t>(i)] = g.degree(v);
            for (node_id nb : g.neighbors(v)) {
                int b = idx.bit_of(nb);
                if (b >= 0) adj[static_cast<std::size_t>(i)] |= 1ull << b;
            }
        }
    }
};

// vol(I, I^c) for every subset mask, via the one-bit-removed recurrence.
std::vector<std::int64_t> boundary_volumes(const SnapshotAdjacency& sa, int k) {
    std::vector<std::int64_t> bvol(std::size_t{1} << k, 0);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << k); ++mask) {
        const int j = lowest_bit(mask);
        const std::uint64_t rest = mask & (mask - 1);
        bvol[mask] = bvol[rest] + sa.degree[static_cast<std::size_t>(j)] -
                     2 * popcount(sa.adj[static_cast<std::size_t>(j)] & rest);
    }
    return bvol;
}

// Iterates masks of fixed popcount c within k bits (Gosper's hack).
template <typename F>
void for_each_mask_of_popcount(int k, int c, F&& fn) {
    if (c == 0) {
        fn(std::uint64_t{0});
        return;
    }
    if (c > k) return;
    const std::uint64_t limit = std::uint64_t{1} << k;
    std::uint64_t mask = (std::uint64_t{1} << c) - 1;
    while (mask < limit) {
        fn(mask);
        const std::uint64_t low = mask & (0 - mask);
        const std::uint64_t ripple = mask + low;
        if (ripple >= limit) break;
        mask = ripple | (((mask ^ ripple) >> 2) / low);
    }
}

void check_dp_size(const char* what, std::size_t k, int max_size) {
    if (static_cast<int>(k) > max_size)
        throw infeasible_error(std::string(what) + ": snapshot has " + std::to_string(k) +
                               " nodes but the exact table sweeps 2^|O| subset states; "
                               "the configured limit is |O| <= " + std::to_string(max_size));
}

// Packs the bits of `sub` into consecutive positions selected by `super`.
std::uint64_t compact_submask(std::uint64_t sub, std::uint64_t super) {
    std::uint64_t out = 0;
    int pos = 0;
    while (super) {
        const std::uint64_t low = super & (0 - super);
        if (sub & low) out |= std::uint64_t{1} << pos;
        ++pos;
        super &= super - 1;
    }
    return out;
}

} // namespace

SnapshotIndex::SnapshotIndex(const NodeSet& snapshot) : nodes_(snapshot.members()) {
    if (nodes_.size() > 63)
        throw infeasible_error("SnapshotIndex: bitmask form requires |O| <= 63, got " +
                               std::to_string(nodes_.size()));
}

int SnapshotIndex::bit_of(node_id v) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
    if (it == nodes_.end() || *it != v) return -1;
    return static_cast<int>(it - nodes_.begin());
}

std::uint64_t SnapshotIndex::mask_of(const NodeSet& subset) const {
    std::uint64_t mask = 0;
    for (node_id v : subset) {
        int b = bit_of(v);
        if (b < 0)
            throw std::invalid_argument("SnapshotIndex: node " + std::to_string(v) +
                                        " is not in the snapshot");
        mask |= std::uint64_t{1} << b;
    }
    return mask;
}

NodeSet SnapshotIndex::set_of(std::uint64_t mask) const {
    std::vector<node_id> out;
    out.reserve(static_cast<std::size_t>(popcount(mask)));
    while (mask) {
        out.push_back(nodes_[static_cast<std::size_t>(lowest_bit(mask))]);
        mask &= mask - 1;
    }
    return NodeSet(std::move(out));
}

double TransitionTable::singleton(node_id v) const {
    int b = index.bit_of(v);
    if (b < 0)
        throw std::invalid_argument("TransitionTable: node " + std::to_string(v) +
                                    " is not in the snapshot");
    return values[std::uint64_t{1} << b];
}

TransitionTable transition_prob_forward(const Graph& g, const NodeSet& snapshot, int max_size) {
    if (snapshot.empty())
        throw std::invalid_argument("transition_prob_forward: empty snapshot");
    check_dp_size("transition_prob_forward", snapshot.size(), max_size);
    SnapshotIndex idx(snapshot);
    const int k = idx.size();
    const std::uint64_t full = idx.full_mask();
    SnapshotAdjacency sa(g, idx);
    auto bvol = boundary_volumes(sa, k);

    std::vector<double> rho(std::size_t{1} << k, 0.0);
    rho[full] = 1.0;
    for (int c = k - 1; c >= 1; --c) {
        for_each_mask_of_popcount(k, c, [&](std::uint64_t mask) {
            const std::int64_t bv = bvol[mask];
            if (bv == 0) return;  // absorbed strict subset: rho stays 0
            double acc = 0.0;
            std::uint64_t rem = full ^ mask;
            while (rem) {
                const int j = lowest_bit(rem);
                rem &= rem - 1;
                const int w = popcount(sa.adj[static_cast<std::size_t>(j)] & mask);
                if (w > 0) acc += static_cast<double>(w) * rho[mask | (std::uint64_t{1} << j)];
            }
            rho[mask] = acc / static_cast<double>(bv);
        });
    }
    return {std::move(idx), std::move(rho)};
}

TransitionTable transition_prob_backward(const Graph& g, const NodeSet& snapshot, int max_size) {
    if (snapshot.empty())
        throw std::invalid_argument("transition_prob_backward: empty snapshot");
    check_dp_size("transition_prob_backward", snapshot.size(), max_size);
    SnapshotIndex idx(snapshot);
    const int k = idx.size();
    const std::uint64_t full = idx.full_mask();
    SnapshotAdjacency sa(g, idx);
    auto bvol = boundary_volumes(sa, k);

    // layer[c]: for each target set T of popcount c, rho(I -> T) for all
    // I inside T, indexed by the T-compacted submask of I. Only the previous
    // layer is needed at any time.
    std::unordered_map<std::uint64_t, std::vector<double>> prev, cur;
    prev.emplace(0ull, std::vector<double>{1.0});  // rho(empty -> empty), unused by contract
    for (int c = 1; c <= k; ++c) {
        cur.clear();
        for_each_mask_of_popcount(k, c, [&](std::uint64_t target) {
            std::vector<double> vals(std::size_t{1} << c, 0.0);
            vals.back() = 1.0;  // rho(T -> T) = 1
            // Single-step weights of completing T by j.
            std::uint64_t bits = target;
            std::vector<int> members;
            members.reserve(static_cast<std::size_t>(c));
            while (bits) {
                members.push_back(lowest_bit(bits));
                bits &= bits - 1;
            }
            for (std::uint64_t sub = (vals.size() - 2); sub + 1 > 0; --sub) {
                if (sub == 0) break;  // empty I not part of the table
                // Expand compact submask to bit positions of `target`.
                std::uint64_t imask = 0;
                for (int b = 0; b < c; ++b)
                    if (sub >> b & 1) imask |= std::uint64_t{1} << members[static_cast<std::size_t>(b)];
                double acc = 0.0;
                for (int b = 0; b < c; ++b) {
                    if (sub >> b & 1) continue;
                    const int j = members[static_cast<std::size_t>(b)];
                    const std::uint64_t without_j = target ^ (std::uint64_t{1} << j);
                    const std::int64_t den = bvol[without_j];
                    if (den == 0) continue;  // absorbed predecessor never reaches T
                    const int num =
                        popcount(sa.adj[static_cast<std::size_t>(j)] & without_j);
                    if (num == 0) continue;
                    const auto& prev_vals = prev.at(without_j);
                    acc += prev_vals[compact_submask(imask, without_j)] *
                           (static_cast<double>(num) / static_cast<double>(den));
                }
                vals[sub] = acc;
            }
            cur.emplace(target, std::move(vals));
        });
        prev = std::move(cur);
    }
    std::vector<double> rho(std::size_t{1} << k, 0.0);
    const auto& final_vals = prev.at(full);
    for (std::uint64_t mask = 1; mask <= full; ++mask) rho[mask] = final_vals[mask];
    return {std::move(idx), std::move(rho)};
}

double path_probability(const Graph& g, const InfectionTrace& trace, std::size_t num_sources) {
    const auto& order = trace.order;
    if (order.empty() || num_sources == 0 || num_sources > order.size())
        throw std::invalid_argument("path_probability: bad trace / source count");
    std::vector<char> infected(static_cast<std::size_t>(g.num_nodes()), 0);
    std::int64_t bv = 0;
    auto infect = [&](node_id v) {
        g.check_node(v);
        std::int64_t inside = 0;
        for (node_id nb : g.neighbors(v))
            if (infected[static_cast<std::size_t>(nb)]) ++inside;
        bv += g.degree(v) - 2 * inside;
        infected[static_cast<std::size_t>(v)] = 1;
        return inside;
    };
    for (std::size_t i = 0; i < num_sources; ++i) {
        if (infected[static_cast<std::size_t>(order[i])]) return 0.0;
        infect(order[i]);
    }
    double prob = 1.0;
    for (std::size_t i = num_sources; i < order.size(); ++i) {
        node_id v = order[i];
        if (infected[static_cast<std::size_t>(v)]) return 0.0;
        const std::int64_t den = bv;
        const std::int64_t num = infect(v);
        if (num == 0) return 0.0;  // not adjacent to the prefix
        prob *= static_cast<double>(num) / static_cast<double>(den);
    }
    return prob;
}

namespace {

double enumerate_paths(const Graph& g, std::vector<char>& infected, std::int64_t bv,
                       const NodeSet& snapshot, std::size_t remaining, double prefix_prob) {
    if (remaining == 0) return prefix_prob;
    double total = 0.0;
    for (node_id v : snapshot) {
        if (infected[static_cast<std::size_t>(v)]) continue;
        std::int64_t inside = 0;
        for (node_id nb : g.neighbors(v))
            if (infected[static_cast<std::size_t>(nb)]) ++inside;
        if (inside == 0) continue;
        infected[static_cast<std::size_t>(v)] = 1;
        const std::int64_t bv_next = bv + g.degree(v) - 2 * inside;
        total += enumerate_paths(g, infected, bv_next, snapshot, remaining - 1,
                                 prefix_prob * static_cast<double>(inside) /
                                     static_cast<double>(bv));
        infected[static_cast<std::size_t>(v)] = 0;
    }
    return total;
}

} // namespace

double brute_force_likelihood(const Graph& g, const NodeSet& sources, const NodeSet& snapshot,
                              int max_size) {
    if (static_cast<int>(snapshot.size()) > max_size)
        throw infeasible_error("brute_force_likelihood: enumeration over permitted orders is "
                               "factorial in |O|; limit is |O| <= " + std::to_string(max_size));
    if (sources.empty()) throw std::invalid_argument("brute_force_likelihood: no sources");
    if (!sources.is_subset_of(snapshot)) return 0.0;
    std::vector<char> infected(static_cast<std::size_t>(g.num_nodes()), 0);
    std::int64_t bv = 0;
    for (node_id s : sources) {
        g.check_node(s);
        std::int64_t inside = 0;
        for (node_id nb : g.neighbors(s))
            if (infected[static_cast<std::size_t>(nb)]) ++inside;
        bv += g.degree(s) - 2 * inside;
        infected[static_cast<std::size_t>(s)] = 1;
    }
    return enumerate_paths(g, infected, bv, snapshot, snapshot.size() - sources.size(), 1.0);
}

double brute_force_likelihood(const Graph& g, node_id source, const NodeSet& snapshot,
                              int max_size) {
    return brute_force_likelihood(g, NodeSet::single(source), snapshot, max_size);
}

double Posterior::prob_of(node_id v) const {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
    if (it == nodes.end() || *it != v)
        throw std::invalid_argument("Posterior: node " + std::to_string(v) +
                                    " is not in the snapshot");
    return p[static_cast<std::size_t>(it - nodes.begin())];
}

Posterior posterior(const Graph& g, const NodeSet& snapshot, int max_size) {
    TransitionTable table = transition_prob_forward(g, snapshot, max_size);
    const int k = table.index.size();
    std::vector<double> lik(static_cast<std::size_t>(k));
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        lik[static_cast<std::size_t>(i)] = table.values[std::uint64_t{1} << i];
        sum += lik[static_cast<std::size_t>(i)];
    }
    if (sum <= 0.0)
        throw no_source_error("posterior: no single node of the snapshot can produce it "
                              "(all likelihoods are zero)");
    for (auto& v : lik) v /= sum;
    return {table.index.nodes(), std::move(lik)};
}

node_id map_estimate(const Posterior& post) {
    if (post.nodes.empty()) throw std::invalid_argument("map_estimate: empty posterior");
    std::size_t best = 0;
    for (std::size_t i = 1; i < post.nodes.size(); ++i)
        if (post.p[i] > post.p[best]) best = i;  // nodes sorted, first max wins ties
    return post.nodes[best];
}

node_id distance_estimate(const Graph& g, const Posterior& post) {
    if (post.nodes.empty()) throw std::invalid_argument("distance_estimate: empty posterior");
    double best_cost = 0.0;
    node_id best = -1;
    for (node_id candidate : post.nodes) {
        auto dist = bfs_distances(g, candidate);
        double cost = 0.0;
        for (std::size_t j = 0; j < post.nodes.size(); ++j) {
            if (post.p[j] == 0.0) continue;
            const std::int32_t d = dist[static_cast<std::size_t>(post.nodes[j])];
            if (d == kUnreachable)
                throw std::invalid_argument("distance_estimate: positive-probability node "
                                            "unreachable from candidate");
            cost += static_cast<double>(d) * post.p[j];
        }
        if (best == -1 || cost < best_cost) {
            best = candidate;
            best_cost = cost;
        }
    }
    return best;
}

Ranking distance_rank(const Graph& g, const Posterior& post) {
    std::vector<double> cost(post.nodes.size(), 0.0);
    for (std::size_t i = 0; i < post.nodes.size(); ++i) {
        auto dist = bfs_distances(g, post.nodes[i]);
        for (std::size_t j = 0; j < post.nodes.size(); ++j) {
            if (post.p[j] == 0.0) continue;
            cost[i] += static_cast<double>(dist[static_cast<std::size_t>(post.nodes[j])]) *
                       post.p[j];
        }
    }
    return make_ranking(post.nodes, cost, /*descending=*/false);
}

Ranking rank_estimate(const Posterior& post) {
    return make_ranking(post.nodes, post.p, /*descending=*/true);
}

NodeSet multi_source_map(const Graph& g, const NodeSet& snapshot, int source_count, int max_size) {
    if (snapshot.empty()) throw std::invalid_argument("multi_source_map: empty snapshot");
    if (source_count < 1 || static_cast<std::size_t>(source_count) > snapshot.size())
        throw std::invalid_argument("multi_source_map: source count out of range");
    check_dp_size("multi_source_map", snapshot.size(), max_size);
    SnapshotIndex idx(snapshot);
    const int k = idx.size();
    const std::uint64_t full = idx.full_mask();
    SnapshotAdjacency sa(g, idx);
    auto bvol = boundary_volumes(sa, k);

    // Forward sweep truncated at cardinality source_count.
    std::vector<double> rho(std::size_t{1} << k, 0.0);
    rho[full] = 1.0;
    for (int c = k - 1; c >= source_count; --c) {
        for_each_mask_of_popcount(k, c, [&](std::uint64_t mask) {
            const std::int64_t bv = bvol[mask];
            if (bv == 0) return;
            double acc = 0.0;
            std::uint64_t rem = full ^ mask;
            while (rem) {
                const int j = lowest_bit(rem);
                rem &= rem - 1;
                const int w = popcount(sa.adj[static_cast<std::size_t>(j)] & mask);
                if (w > 0) acc += static_cast<double>(w) * rho[mask | (std::uint64_t{1} << j)];
            }
            rho[mask] = acc / static_cast<double>(bv);
        });
    }

    double best_val = -1.0;
    NodeSet best_set;
    for_each_mask_of_popcount(k, source_count, [&](std::uint64_t mask) {
        const double v = rho[mask];
        if (v < best_val) return;
        NodeSet candidate = idx.set_of(mask);
        if (v > best_val ||
            std::lexicographical_compare(candidate.members().begin(), candidate.members().end(),
                                         best_set.members().begin(), best_set.members().end())) {
            best_val = v;
            best_set = std::move(candidate);
        }
    });
    return best_set;
}

} // namespace episource
