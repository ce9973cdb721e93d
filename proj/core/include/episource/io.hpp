#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "episource/graph.hpp"

namespace episource {

/// Mapping between original input labels and dense 0-based indices,
/// produced when an edge list is loaded with label compaction.
struct LabelTable {
    std::vector<long long> original;  // index -> original label
    std::unordered_map<long long, node_id> dense;

    node_id to_dense(long long label) const;
    long long to_original(node_id v) const { return original[static_cast<std::size_t>(v)]; }
};

struct LoadedGraph {
    Graph graph;
    /// Present only when compaction remapped non-dense labels.
    std::optional<LabelTable> labels;
};

/// Parses an edge list: one whitespace-separated node pair per line,
/// '#' starts a comment line, blank lines ignored.
std::vector<EdgeRecord> parse_edge_records(std::istream& in);

/// Loads an edge-list stream. With compact_labels the input labels may be
/// arbitrary non-negative integers and are remapped to a dense range (the
/// table is returned); otherwise indices up to the max label are kept and
/// unused ones become isolated nodes.
LoadedGraph load_edge_list(std::istream& in, Indexing indexing, bool compact_labels = false);
LoadedGraph load_edge_list_file(const std::string& path, Indexing indexing,
                                bool compact_labels = false);

void write_edge_list(std::ostream& out, const Graph& g);
void write_label_table(std::ostream& out, const LabelTable& table);

/// Snapshot file: one node id per line, '#' comments allowed. Labels are
/// interpreted through the table when one is given.
NodeSet load_node_set(std::istream& in, Indexing indexing, const LabelTable* labels = nullptr);
NodeSet load_node_set_file(const std::string& path, Indexing indexing,
                           const LabelTable* labels = nullptr);

} // namespace episource
