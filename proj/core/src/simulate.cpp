#include "episource/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace episource {

bool is_permitted_permutation(const Graph& g, const std::vector<node_id>& order,
                              std::size_t num_sources) {
    if (order.empty() || num_sources == 0 || num_sources > order.size()) return false;
    std::vector<char> in_prefix(static_cast<std::size_t>(g.num_nodes()), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        node_id v = order[i];
        if (v < 0 || v >= g.num_nodes() || in_prefix[static_cast<std::size_t>(v)]) return false;
        if (i >= num_sources) {
            bool attached = false;
            for (node_id nb : g.neighbors(v)) {
                if (in_prefix[static_cast<std::size_t>(nb)]) {
                    attached = true;
                    break;
                }
            }
            if (!attached) return false;
        }
        in_prefix[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

std::optional<std::vector<BoundaryProb>> next_infection_distribution(const Graph& g,
                                                                     const NodeSet& I) {
    if (I.empty()) throw std::invalid_argument("next_infection_distribution: empty infected set");
    for (node_id v : I) g.check_node(v);
    std::vector<std::pair<node_id, std::int64_t>> counts;
    std::int64_t total = 0;
    for (node_id v : I) {
        for (node_id nb : g.neighbors(v)) {
            if (!I.contains(nb)) {
                auto it = std::find_if(counts.begin(), counts.end(),
                                       [&](const auto& p) { return p.first == nb; });
                if (it == counts.end()) counts.emplace_back(nb, 1);
                else it->second++;
                ++total;
            }
        }
    }
    if (total == 0) return std::nullopt;  // absorbed: I is a union of components
    std::sort(counts.begin(), counts.end());
    std::vector<BoundaryProb> out;
    out.reserve(counts.size());
    for (auto& [node, c] : counts)
        out.push_back({node, static_cast<double>(c) / static_cast<double>(total)});
    return out;
}

namespace {

// Incremental boundary bookkeeping for the jump chain: per-node count of
// infected neighbors, updated in O(deg) per infection.
struct Frontier {
    const Graph& g;
    std::vector<char> infected;
    std::vector<std::int64_t> count;      // infected-neighbor count per susceptible node
    std::vector<node_id> boundary;        // nodes with count > 0, unordered
    std::vector<std::int32_t> slot;       // position in `boundary`, -1 if absent
    std::int64_t total = 0;               // vol(I, I^c)

    explicit Frontier(const Graph& graph)
        : g(graph),
          infected(static_cast<std::size_t>(graph.num_nodes()), 0),
          count(static_cast<std::size_t>(graph.num_nodes()), 0),
          slot(static_cast<std::size_t>(graph.num_nodes()), -1) {}

    void infect(node_id v) {
        assert(!infected[static_cast<std::size_t>(v)]);
        infected[static_cast<std::size_t>(v)] = 1;
        if (slot[static_cast<std::size_t>(v)] != -1) {
            total -= count[static_cast<std::size_t>(v)];
            remove_from_boundary(v);
        }
        for (node_id nb : g.neighbors(v)) {
            if (infected[static_cast<std::size_t>(nb)]) continue;
            if (count[static_cast<std::size_t>(nb)]++ == 0) {
                slot[static_cast<std::size_t>(nb)] = static_cast<std::int32_t>(boundary.size());
                boundary.push_back(nb);
            }
            ++total;
        }
    }

    void remove_from_boundary(node_id v) {
        std::int32_t pos = slot[static_cast<std::size_t>(v)];
        node_id last = boundary.back();
        boundary[static_cast<std::size_t>(pos)] = last;
        slot[static_cast<std::size_t>(last)] = pos;
        boundary.pop_back();
        slot[static_cast<std::size_t>(v)] = -1;
    }

    // Samples the next infected node with probability count / total.
    node_id sample(std::mt19937_64& rng) const {
        std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
        std::int64_t u = pick(rng);
        for (node_id v : boundary) {
            u -= count[static_cast<std::size_t>(v)];
            if (u < 0) return v;
        }
        return boundary.back();  // unreachable for consistent state
    }
};

std::int64_t reachable_count(const Graph& g, const NodeSet& sources) {
    std::vector<char> seen(static_cast<std::size_t>(g.num_nodes()), 0);
    std::vector<node_id> queue;
    for (node_id s : sources) {
        g.check_node(s);
        if (!seen[static_cast<std::size_t>(s)]) {
            seen[static_cast<std::size_t>(s)] = 1;
            queue.push_back(s);
        }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (node_id nb : g.neighbors(queue[head])) {
            if (!seen[static_cast<std::size_t>(nb)]) {
                seen[static_cast<std::size_t>(nb)] = 1;
                queue.push_back(nb);
            }
        }
    }
    return static_cast<std::int64_t>(queue.size());
}

} // namespace

InfectionTrace simulate_until_size(const Graph& g, const NodeSet& sources, node_id target_size,
                                   std::mt19937_64& rng) {
    if (sources.empty()) throw std::invalid_argument("simulate_until_size: no sources");
    if (static_cast<std::size_t>(target_size) < sources.size())
        throw std::invalid_argument("simulate_until_size: target size below source count");
    if (reachable_count(g, sources) < target_size)
        throw std::invalid_argument("simulate_until_size: target size " +
                                    std::to_string(target_size) +
                                    " exceeds nodes reachable from the sources");
    Frontier f(g);
    InfectionTrace trace;
    trace.order.reserve(static_cast<std::size_t>(target_size));
    for (node_id s : sources) {
        f.infect(s);
        trace.order.push_back(s);
    }
    while (trace.order.size() < static_cast<std::size_t>(target_size)) {
        node_id next = f.sample(rng);
        f.infect(next);
        trace.order.push_back(next);
    }
    assert(is_permitted_permutation(g, trace.order, sources.size()));
    return trace;
}

InfectionTrace simulate_until_time(const Graph& g, const NodeSet& sources, double beta, double t,
                                   std::mt19937_64& rng) {
    if (sources.empty()) throw std::invalid_argument("simulate_until_time: no sources");
    if (!(beta > 0.0)) throw std::invalid_argument("simulate_until_time: beta must be > 0");
    if (t < 0.0) throw std::invalid_argument("simulate_until_time: negative time horizon");
    Frontier f(g);
    InfectionTrace trace;
    trace.beta = beta;
    for (node_id s : sources) {
        f.infect(s);
        trace.order.push_back(s);
        trace.times.push_back(0.0);
    }
    double now = 0.0;
    while (f.total > 0) {
        std::exponential_distribution<double> wait(beta * static_cast<double>(f.total));
        now += wait(rng);
        if (now > t) break;
        node_id next = f.sample(rng);
        f.infect(next);
        trace.order.push_back(next);
        trace.times.push_back(now);
    }
    assert(is_permitted_permutation(g, trace.order, sources.size()));
    return trace;
}

} // namespace episource
