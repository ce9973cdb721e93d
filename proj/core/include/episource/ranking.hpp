#pragma once

#include <vector>

#include "episource/types.hpp"

namespace episource {

struct RankEntry {
    node_id node;
    double score;
    /// 1-based position; tied scores share their midrank (average position).
    double rank;
};

/// Scored total order over a candidate set. Entries are listed best-first
/// (ties ordered by ascending node id for stable output).
class Ranking {
public:
    Ranking() = default;
    explicit Ranking(std::vector<RankEntry> entries) : entries_(std::move(entries)) {}

    const std::vector<RankEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool contains(node_id v) const;
    /// Midrank of v; throws std::invalid_argument if v is not ranked.
    double rank_of(node_id v) const;
    /// Best-ranked node (smallest id among top ties).
    node_id top() const;

private:
    std::vector<RankEntry> entries_;
};

/// Builds a midrank Ranking from per-node scores. With descending=true a
/// larger score is better; exact score equality defines a tie group.
Ranking make_ranking(const std::vector<node_id>& nodes, const std::vector<double>& scores,
                     bool descending = true);

} // namespace episource
