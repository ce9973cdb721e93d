#include "episource/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "episource/errors.hpp"

namespace episource {

node_id LabelTable::to_dense(long long label) const {
    auto it = dense.find(label);
    if (it == dense.end())
        throw parse_error("label " + std::to_string(label) + " not present in label table");
    return it->second;
}

std::vector<EdgeRecord> parse_edge_records(std::istream& in) {
    std::vector<EdgeRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long a = 0, b = 0;
        if (!(ls >> a)) {
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                throw parse_error("line " + std::to_string(line_no) + ": malformed node index '" +
                                  tok + "'");
            continue;  // blank or comment-only line
        }
        if (!(ls >> b))
            throw parse_error("line " + std::to_string(line_no) + ": expected two node indices");
        std::string extra;
        if (ls >> extra)
            throw parse_error("line " + std::to_string(line_no) + ": trailing token '" + extra +
                              "'");
        records.push_back({a, b, line_no});
    }
    return records;
}

LoadedGraph load_edge_list(std::istream& in, Indexing indexing, bool compact_labels) {
    auto records = parse_edge_records(in);
    if (!compact_labels) return {from_edge_list(records, indexing), std::nullopt};

    // With compaction the indexing base is immaterial; the table keeps the
    // raw input labels.
    const long long lowest = indexing == Indexing::one_based ? 1 : 0;
    LabelTable table;
    auto intern = [&](long long raw, int line) {
        if (raw < lowest)
            throw parse_error("line " + std::to_string(line) + ": node index below " +
                              std::to_string(lowest));
        auto [it, inserted] = table.dense.emplace(raw, static_cast<node_id>(table.original.size()));
        if (inserted) table.original.push_back(raw);
        return it->second;
    };
    std::vector<std::pair<node_id, node_id>> edges;
    edges.reserve(records.size());
    for (const auto& r : records) {
        if (r.a == r.b)
            throw parse_error("line " + std::to_string(r.line) + ": self-loop at node " +
                              std::to_string(r.a));
        const node_id a = intern(r.a, r.line);  // interning order fixes the dense ids
        const node_id b = intern(r.b, r.line);
        edges.emplace_back(a, b);
    }
    Graph g = Graph::from_edges(static_cast<node_id>(table.original.size()), edges);
    // Dense inputs need no table.
    bool dense_input = true;
    for (std::size_t i = 0; i < table.original.size(); ++i)
        if (table.original[i] != static_cast<long long>(i)) { dense_input = false; break; }
    if (dense_input) return {std::move(g), std::nullopt};
    return {std::move(g), std::move(table)};
}

LoadedGraph load_edge_list_file(const std::string& path, Indexing indexing, bool compact_labels) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open edge list file: " + path);
    return load_edge_list(in, indexing, compact_labels);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (node_id v = 0; v < g.num_nodes(); ++v) {
        for (node_id nb : g.neighbors(v)) {
            if (v < nb) out << v << ' ' << nb << '\n';
        }
    }
}

void write_label_table(std::ostream& out, const LabelTable& table) {
    for (std::size_t i = 0; i < table.original.size(); ++i)
        out << i << '\t' << table.original[i] << '\n';
}

NodeSet load_node_set(std::istream& in, Indexing indexing, const LabelTable* labels) {
    const long long shift = indexing == Indexing::one_based ? 1 : 0;
    std::vector<node_id> nodes;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        long long v;
        if (!(ls >> v)) {
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                throw parse_error("line " + std::to_string(line_no) + ": malformed node index '" +
                                  tok + "'");
            continue;
        }
        if (labels) {
            nodes.push_back(labels->to_dense(v));  // raw labels, base handled by the table
            continue;
        }
        long long adjusted = v - shift;
        if (adjusted < 0)
            throw parse_error("line " + std::to_string(line_no) + ": node index below " +
                              std::to_string(shift));
        nodes.push_back(static_cast<node_id>(adjusted));
    }
    return NodeSet(std::move(nodes));
}

NodeSet load_node_set_file(const std::string& path, Indexing indexing, const LabelTable* labels) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open node list file: " + path);
    return load_node_set(in, indexing, labels);
}

} // namespace episource
