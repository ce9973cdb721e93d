#include "episource/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "episource/baselines.hpp"
#include "episource/errors.hpp"
#include "episource/exact.hpp"
#include "episource/greedy.hpp"
#include "episource/mean_field.hpp"
#include "episource/simulate.hpp"

namespace episource {

GraphStats graph_stats(const Graph& g) {
    GraphStats s;
    s.n = g.num_nodes();
    if (s.n == 0) return s;
    s.mean_degree = 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(s.n);
    double wedge_ends = 0.0;  // ordered 2-paths through each edge's endpoints
    std::int64_t triples = 0;
    for (node_id v = 0; v < s.n; ++v) {
        const std::int64_t d = g.degree(v);
        s.max_degree = std::max<node_id>(s.max_degree, static_cast<node_id>(d));
        triples += d * (d - 1) / 2;
    }
    // Sum over edges of |N(u) cap N(v)| counts each triangle three times.
    for (node_id v = 0; v < s.n; ++v) {
        auto nv = g.neighbors(v);
        for (node_id w : nv) {
            if (w <= v) continue;
            auto nw = g.neighbors(w);
            std::size_t a = 0, b = 0;
            while (a < nv.size() && b < nw.size()) {
                if (nv[a] == nw[b]) {
                    ++wedge_ends;
                    ++a;
                    ++b;
                } else if (nv[a] < nw[b]) {
                    ++a;
                } else {
                    ++b;
                }
            }
        }
    }
    s.clustering = triples > 0 ? wedge_ends / static_cast<double>(triples) : 0.0;
    return s;
}

std::string_view method_name(Method m) {
    switch (m) {
        case Method::bayes: return "bayes";
        case Method::bayes_dist: return "bayes-dist";
        case Method::ge: return "ge";
        case Method::mfa: return "mfa";
        case Method::rc: return "rc";
        case Method::jc: return "jc";
        case Method::dc: return "dc";
        case Method::random: return "random";
    }
    return "?";
}

std::vector<std::string_view> method_names() {
    return {"bayes", "bayes-dist", "ge", "mfa", "rc", "jc", "dc", "random"};
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : {Method::bayes, Method::bayes_dist, Method::ge, Method::mfa, Method::rc,
                     Method::jc, Method::dc, Method::random})
        if (method_name(m) == name) return m;
    return std::nullopt;
}

void ExperimentConfig::validate() const {
    if (methods.empty()) throw std::invalid_argument("experiment: no methods selected");
    if (sizes.empty()) throw std::invalid_argument("experiment: no infection sizes");
    for (node_id k : sizes)
        if (k < 2) throw std::invalid_argument("experiment: infection sizes must be >= 2");
    if (replicates < 1) throw std::invalid_argument("experiment: replicates must be >= 1");
    if (bayes_cap < 1) throw std::invalid_argument("experiment: bayes size cap must be >= 1");
}

double normalized_rank(const Ranking& ranking, node_id true_source, double denominator) {
    if (!(denominator > 0.0)) throw std::invalid_argument("normalized_rank: bad denominator");
    // rank_of throws if the source is missing, which under single-source SI
    // would mean an estimator dropped an infected node.
    return (ranking.rank_of(true_source) - 1.0) / denominator;
}

namespace {

struct Sample {
    double rank = 0.0;
    double ms = 0.0;
};

std::vector<node_id> largest_component_nodes(const Graph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.num_nodes()), -1);
    std::vector<node_id> queue, best;
    int c = 0;
    for (node_id s = 0; s < g.num_nodes(); ++s) {
        if (comp[static_cast<std::size_t>(s)] != -1) continue;
        queue.clear();
        queue.push_back(s);
        comp[static_cast<std::size_t>(s)] = c;
        for (std::size_t head = 0; head < queue.size(); ++head)
            for (node_id nb : g.neighbors(queue[head]))
                if (comp[static_cast<std::size_t>(nb)] == -1) {
                    comp[static_cast<std::size_t>(nb)] = c;
                    queue.push_back(nb);
                }
        if (queue.size() > best.size()) best = queue;
        ++c;
    }
    std::sort(best.begin(), best.end());
    return best;
}

} // namespace

ExperimentResult run_experiment(const Graph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult result;
    result.stats = graph_stats(g);
    result.seed = cfg.seed;

    const auto component = largest_component_nodes(g);
    const node_id max_size = *std::max_element(cfg.sizes.begin(), cfg.sizes.end());
    if (static_cast<std::size_t>(max_size) > component.size())
        throw std::invalid_argument("experiment: largest component has " +
                                    std::to_string(component.size()) +
                                    " nodes, below the largest infection size " +
                                    std::to_string(max_size));

    const int threads = cfg.threads > 0
                            ? cfg.threads
                            : std::max(1u, std::thread::hardware_concurrency());
    const double denom_network = static_cast<double>(g.num_nodes());

    for (node_id k : cfg.sizes) {
        // One slot per (method, replicate); reduced in replicate order below.
        std::vector<std::vector<Sample>> samples(
            cfg.methods.size(), std::vector<Sample>(static_cast<std::size_t>(cfg.replicates)));
        std::vector<char> feasible(cfg.methods.size(), 1);
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi)
            if (cfg.methods[mi] == Method::bayes || cfg.methods[mi] == Method::bayes_dist)
                feasible[mi] = k <= cfg.bayes_cap;

        auto worker = [&](int first, int last) {
            for (int rep = first; rep < last; ++rep) {
                std::seed_seq seq{cfg.seed, static_cast<std::uint64_t>(k),
                                  static_cast<std::uint64_t>(rep)};
                std::mt19937_64 rng(seq);
                std::uniform_int_distribution<std::size_t> pick(0, component.size() - 1);
                const node_id source = component[pick(rng)];
                InfectionTrace trace = simulate_until_size(g, NodeSet::single(source), k, rng);
                const NodeSet snapshot = trace.infected_set();
                const double denom = cfg.normalization == Normalization::snapshot
                                         ? static_cast<double>(snapshot.size())
                                         : denom_network;
                for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
                    if (!feasible[mi]) continue;
                    const auto t0 = std::chrono::steady_clock::now();
                    Ranking ranking;
                    switch (cfg.methods[mi]) {
                        case Method::bayes:
                            ranking = rank_estimate(posterior(g, snapshot));
                            break;
                        case Method::bayes_dist:
                            ranking = distance_rank(g, posterior(g, snapshot));
                            break;
                        case Method::ge:
                            ranking = ge_rank(g, snapshot);
                            break;
                        case Method::mfa:
                            ranking = mfa_rank(g, snapshot);
                            break;
                        case Method::rc:
                            ranking = rumor_centrality_rank(g, snapshot);
                            break;
                        case Method::jc:
                            ranking = jordan_center_rank(g, snapshot);
                            break;
                        case Method::dc:
                            ranking = degree_centrality_rank(g, snapshot);
                            break;
                        case Method::random:
                            ranking = random_rank(snapshot, rng);
                            break;
                    }
                    const auto t1 = std::chrono::steady_clock::now();
                    auto& slot = samples[mi][static_cast<std::size_t>(rep)];
                    slot.rank = normalized_rank(ranking, source, denom);
                    slot.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                }
            }
        };

        if (threads == 1 || cfg.replicates == 1) {
            worker(0, cfg.replicates);
        } else {
            std::vector<std::thread> pool;
            const int chunk = (cfg.replicates + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                const int first = t * chunk;
                const int last = std::min(cfg.replicates, first + chunk);
                if (first >= last) break;
                pool.emplace_back(worker, first, last);
            }
            for (auto& th : pool) th.join();
        }

        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
            ResultRow row;
            row.method = cfg.methods[mi];
            row.size = k;
            row.replicates = cfg.replicates;
            if (!feasible[mi]) {
                row.skipped = true;
                row.mean_rank = row.std_error = row.mean_ms =
                    std::numeric_limits<double>::quiet_NaN();
            } else {
                double sum = 0.0, ms = 0.0;
                for (const auto& s : samples[mi]) {
                    sum += s.rank;
                    ms += s.ms;
                }
                const double n = static_cast<double>(cfg.replicates);
                row.mean_rank = sum / n;
                row.mean_ms = ms / n;
                double var = 0.0;
                for (const auto& s : samples[mi]) {
                    const double d = s.rank - row.mean_rank;
                    var += d * d;
                }
                row.std_error = cfg.replicates > 1 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
            }
            result.rows.push_back(row);
        }
    }
    return result;
}

void write_results_csv(std::ostream& out, const ExperimentResult& result, bool include_timing) {
    out << "method,k,mean_rank,stderr,mean_ms\n";
    char buf[160];
    for (const auto& row : result.rows) {
        if (row.skipped) {
            std::snprintf(buf, sizeof buf, "%s,%d,nan,nan,nan\n",
                          std::string(method_name(row.method)).c_str(), row.size);
        } else {
            std::snprintf(buf, sizeof buf, "%s,%d,%.10g,%.10g,%.10g\n",
                          std::string(method_name(row.method)).c_str(), row.size, row.mean_rank,
                          row.std_error, include_timing ? row.mean_ms : 0.0);
        }
        out << buf;
    }
}

} // namespace episource
