#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace episource {

/// Dense 0-based node index.
using node_id = std::int32_t;

/// Sentinel for "no path" in hop-distance vectors.
inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

/// A set of node indices, kept sorted and duplicate-free.
///
/// This is the exchange type for infected sets and snapshots. Subset-lattice
/// algorithms map a NodeSet onto machine-word bitmasks relative to an
/// enclosing snapshot (see SnapshotIndex); that form is only available for
/// snapshots of at most 63 nodes, which is far beyond the range where the
/// exact table is computable anyway.
class NodeSet {
public:
    NodeSet() = default;
    /// Normalizes (sorts, deduplicates) and rejects negative indices.
    explicit NodeSet(std::vector<node_id> members);
    NodeSet(std::initializer_list<node_id> members);

    static NodeSet single(node_id v) { return NodeSet({v}); }
    /// Contiguous range [0, n).
    static NodeSet range(node_id n);

    bool contains(node_id v) const;
    bool is_subset_of(const NodeSet& other) const;

    NodeSet with(node_id v) const;
    NodeSet without(node_id v) const;

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    node_id operator[](std::size_t i) const { return members_[i]; }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }
    const std::vector<node_id>& members() const { return members_; }

    bool operator==(const NodeSet&) const = default;

private:
    std::vector<node_id> members_;
};

/// Complement of s within [0, n).
NodeSet complement(const NodeSet& s, node_id n);

} // namespace episource
