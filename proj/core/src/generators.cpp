#include "episource/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace episource {

Graph regular_tree(int degree, int depth) {
    if (degree < 2) throw std::invalid_argument("regular_tree: degree must be >= 2");
    if (depth < 0) throw std::invalid_argument("regular_tree: depth must be >= 0");
    std::vector<std::pair<node_id, node_id>> edges;
    std::vector<node_id> frontier{0};
    node_id next = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<node_id> next_frontier;
        for (node_id parent : frontier) {
            int children = (parent == 0) ? degree : degree - 1;
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(parent, next);
                next_frontier.push_back(next);
                ++next;
            }
        }
        frontier = std::move(next_frontier);
    }
    return Graph::from_edges(next, edges);
}

Graph random_tree(node_id n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_tree: n must be >= 1");
    if (n == 1) return Graph::from_edges(1, {});
    if (n == 2) {
        std::vector<std::pair<node_id, node_id>> e{{0, 1}};
        return Graph::from_edges(2, e);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<node_id> pick(0, n - 1);
    std::vector<node_id> pruefer(static_cast<std::size_t>(n) - 2);
    for (auto& p : pruefer) p = pick(rng);

    // Standard decode: degree = multiplicity in the sequence + 1.
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (node_id p : pruefer) deg[static_cast<std::size_t>(p)]++;
    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(static_cast<std::size_t>(n) - 1);
    node_id ptr = 0;
    while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    node_id leaf = ptr;
    for (node_id p : pruefer) {
        edges.emplace_back(leaf, p);
        if (--deg[static_cast<std::size_t>(p)] == 1 && p < ptr) {
            leaf = p;
        } else {
            ++ptr;
            while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
            leaf = ptr;
        }
    }
    // Last two remaining leaves: `leaf` and node n-1.
    edges.emplace_back(leaf, n - 1);
    return Graph::from_edges(n, edges);
}

void DcsbmConfig::validate() const {
    if (n < 1) throw std::invalid_argument("dcsbm: n must be >= 1");
    if (communities < 1) throw std::invalid_argument("dcsbm: communities must be >= 1");
    if (!(0.0 <= p_out && p_out <= p_in && p_in <= 1.0))
        throw std::invalid_argument("dcsbm: need 0 <= p_out <= p_in <= 1");
    if (!(pareto_alpha > 1.0)) throw std::invalid_argument("dcsbm: pareto_alpha must be > 1");
    if (!(pareto_threshold > 0.0))
        throw std::invalid_argument("dcsbm: pareto_threshold must be > 0");
    if (!(target_mean_degree > 0.0))
        throw std::invalid_argument("dcsbm: target_mean_degree must be > 0");
}

Graph dcsbm(const DcsbmConfig& cfg) {
    cfg.validate();
    const node_id n = cfg.n;
    const int K = cfg.communities;
    std::mt19937_64 rng(cfg.seed);

    // Block of node i: near-equal contiguous blocks.
    std::vector<int> block(static_cast<std::size_t>(n));
    {
        node_id base = n / K, extra = n % K, v = 0;
        for (int b = 0; b < K; ++b) {
            node_id sz = base + (b < extra ? 1 : 0);
            for (node_id i = 0; i < sz; ++i) block[static_cast<std::size_t>(v++)] = b;
        }
    }

    std::vector<double> theta(static_cast<std::size_t>(n), 1.0);
    if (!cfg.unit_theta) {
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (auto& t : theta) {
            double u = unif(rng);
            while (u <= 0.0) u = unif(rng);
            t = cfg.pareto_threshold * std::pow(u, -1.0 / cfg.pareto_alpha);
        }
    }

    // Global scale c: expected degree sum (without the probability clip) is
    // 2 * sum_{i<j} c * theta_i theta_j P_ij = n * target_mean_degree.
    double pair_sum;
    {
        std::vector<double> block_sum(static_cast<std::size_t>(K), 0.0);
        std::vector<double> block_sq(static_cast<std::size_t>(K), 0.0);
        for (node_id i = 0; i < n; ++i) {
            block_sum[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] +=
                theta[static_cast<std::size_t>(i)];
            block_sq[static_cast<std::size_t>(block[static_cast<std::size_t>(i)])] +=
                theta[static_cast<std::size_t>(i)] * theta[static_cast<std::size_t>(i)];
        }
        double total = std::accumulate(block_sum.begin(), block_sum.end(), 0.0);
        double within = 0.0, sq = 0.0;
        for (int b = 0; b < K; ++b) {
            within += block_sum[static_cast<std::size_t>(b)] * block_sum[static_cast<std::size_t>(b)];
            sq += block_sq[static_cast<std::size_t>(b)];
        }
        double in_pairs = 0.5 * (within - sq);
        double out_pairs = 0.5 * (total * total - within);
        pair_sum = cfg.p_in * in_pairs + cfg.p_out * out_pairs;
    }
    if (pair_sum <= 0.0) return Graph::from_edges(n, {});
    const double c = static_cast<double>(n) * cfg.target_mean_degree / (2.0 * pair_sum);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * cfg.target_mean_degree / 2.0));
    for (node_id i = 0; i < n; ++i) {
        const double ti = c * theta[static_cast<std::size_t>(i)];
        const int bi = block[static_cast<std::size_t>(i)];
        for (node_id j = i + 1; j < n; ++j) {
            double p = ti * theta[static_cast<std::size_t>(j)] *
                       (block[static_cast<std::size_t>(j)] == bi ? cfg.p_in : cfg.p_out);
            if (p <= 0.0) continue;
            if (p > 1.0) p = 1.0;
            if (unif(rng) < p) edges.emplace_back(i, j);
        }
    }
    Graph g = Graph::from_edges(n, edges);
    if (cfg.largest_component) return largest_component(g);
    return g;
}

Graph largest_component(const Graph& g) {
    const node_id n = g.num_nodes();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int ncomp = 0;
    std::vector<node_id> queue, best_nodes;
    std::size_t best_size = 0;
    int best_comp = -1;
    for (node_id s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        queue.clear();
        queue.push_back(s);
        comp[static_cast<std::size_t>(s)] = ncomp;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            for (node_id nb : g.neighbors(queue[head])) {
                if (comp[static_cast<std::size_t>(nb)] == -1) {
                    comp[static_cast<std::size_t>(nb)] = ncomp;
                    queue.push_back(nb);
                }
            }
        }
        if (queue.size() > best_size) {
            best_size = queue.size();
            best_comp = ncomp;
        }
        ++ncomp;
    }
    std::vector<node_id> remap(static_cast<std::size_t>(n), -1);
    node_id next = 0;
    for (node_id v = 0; v < n; ++v)
        if (comp[static_cast<std::size_t>(v)] == best_comp) remap[static_cast<std::size_t>(v)] = next++;
    std::vector<std::pair<node_id, node_id>> edges;
    for (node_id v = 0; v < n; ++v) {
        if (remap[static_cast<std::size_t>(v)] == -1) continue;
        for (node_id nb : g.neighbors(v))
            if (v < nb) edges.emplace_back(remap[static_cast<std::size_t>(v)],
                                           remap[static_cast<std::size_t>(nb)]);
    }
    return Graph::from_edges(next, edges);
}

} // namespace episource
