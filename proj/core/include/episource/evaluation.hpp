#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "episource/graph.hpp"
#include "episource/ranking.hpp"

namespace episource {

struct GraphStats {
    node_id n = 0;
    double mean_degree = 0.0;
    node_id max_degree = 0;
    double clustering = 0.0;  // 3 * triangles / connected triples
};

GraphStats graph_stats(const Graph& g);

enum class Method { bayes, bayes_dist, ge, mfa, rc, jc, dc, random };

std::string_view method_name(Method m);
std::optional<Method> parse_method(std::string_view name);
/// All method names, for usage messages.
std::vector<std::string_view> method_names();

enum class Normalization { snapshot, network };

struct ExperimentConfig {
    std::vector<Method> methods;
    std::vector<node_id> sizes;      // infection sizes k, each >= 2
    int replicates = 500;
    std::uint64_t seed = 0;
    Normalization normalization = Normalization::snapshot;
    /// The exact-posterior method is skipped (with a marker row) for
    /// snapshots larger than this.
    int bayes_cap = 10;
    int threads = 0;  // 0: hardware concurrency

    void validate() const;
};

struct ResultRow {
    Method method;
    node_id size = 0;
    bool skipped = false;      // infeasible at this size
    double mean_rank = 0.0;    // mean normalized rank of the true source
    double std_error = 0.0;
    double mean_ms = 0.0;      // mean wall time per snapshot
    int replicates = 0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    GraphStats stats;
    std::uint64_t seed = 0;
};

/// Normalized rank (midrank(true_source) - 1) / denominator; the caller picks
/// the snapshot size or the network size as denominator.
double normalized_rank(const Ranking& ranking, node_id true_source, double denominator);

/// Monte-Carlo sweep: for every size k and replicate, sample a source
/// uniformly from the largest component, run the jump chain to size k, apply
/// every configured method to the snapshot and record the normalized rank of
/// the true source plus wall time. Replicates own RNG streams derived from
/// (seed, k, replicate) and are reduced in replicate order, so results are
/// independent of thread scheduling.
ExperimentResult run_experiment(const Graph& g, const ExperimentConfig& cfg);

/// CSV rows "method,k,mean_rank,stderr,mean_ms"; skipped points carry "nan"
/// markers. Without include_timing the mean_ms column is written as 0 so
/// equal-seed runs are byte-identical.
void write_results_csv(std::ostream& out, const ExperimentResult& result,
                       bool include_timing = true);

} // namespace episource
