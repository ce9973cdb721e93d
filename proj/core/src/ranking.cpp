#include "episource/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace episource {

bool Ranking::contains(node_id v) const {
    for (const auto& e : entries_)
        if (e.node == v) return true;
    return false;
}

double Ranking::rank_of(node_id v) const {
    for (const auto& e : entries_)
        if (e.node == v) return e.rank;
    throw std::invalid_argument("Ranking: node " + std::to_string(v) + " not ranked");
}

node_id Ranking::top() const {
    if (entries_.empty()) throw std::invalid_argument("Ranking: empty");
    return entries_.front().node;
}

Ranking make_ranking(const std::vector<node_id>& nodes, const std::vector<double>& scores,
                     bool descending) {
    if (nodes.size() != scores.size())
        throw std::invalid_argument("make_ranking: nodes/scores size mismatch");
    std::vector<std::size_t> order(nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return descending ? scores[a] > scores[b] : scores[a] < scores[b];
        return nodes[a] < nodes[b];
    });
    std::vector<RankEntry> entries(nodes.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + 1 + j);  // mean of positions i+1..j
        for (std::size_t t = i; t < j; ++t)
            entries[t] = {nodes[order[t]], scores[order[t]], midrank};
        i = j;
    }
    return Ranking(std::move(entries));
}

} // namespace episource
