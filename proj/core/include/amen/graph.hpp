#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amen/errors.hpp"

namespace amen {

using NodeId = std::uint32_t; // dense node index
using AttrId = std::uint32_t; // dense attribute index

/// One sparse attribute entry of a node row. Entries with value 0 are never
/// stored; absence means 0.
struct AttrEntry {
    AttrId attr;
    double value;
};

class GraphBuilder;

/// Immutable undirected attributed graph.
///
/// Adjacency is CSR with per-node sorted neighbor lists and no self-loops or
/// duplicate edges. Attribute rows are sparse, sorted by attribute id, with
/// values in [0,1]. Node and attribute external names are kept as a bijection
/// with the dense indices. Safe to share across threads after construction.
class AttributedGraph {
public:
    std::size_t node_count() const { return degrees_.size(); }
    std::uint64_t edge_count() const { return edge_count_; }
    double two_m() const { return 2.0 * static_cast<double>(edge_count_); }
    std::size_t attribute_count() const { return attr_names_.size(); }

    std::uint32_t degree(NodeId i) const { return degrees_[i]; }

    std::span<const NodeId> neighbors(NodeId i) const {
        return {adj_.data() + adj_offsets_[i], adj_.data() + adj_offsets_[i + 1]};
    }

    std::span<const AttrEntry> attributes(NodeId i) const {
        return {attrs_.data() + attr_offsets_[i], attrs_.data() + attr_offsets_[i + 1]};
    }

    bool has_edge(NodeId i, NodeId j) const;

    /// True when every stored attribute value equals 1 (binary data).
    bool attributes_binary() const { return attrs_binary_; }

    const std::string& node_label(NodeId i) const { return node_labels_[i]; }
    const std::string& attribute_name(AttrId f) const { return attr_names_[f]; }
    std::optional<NodeId> find_node(const std::string& label) const;
    std::optional<AttrId> find_attribute(const std::string& name) const;

    /// Null-model probability that i and j are adjacent by chance, k_i*k_j/2m.
    /// Throws NullModelError when m == 0.
    double expected_edge_probability(NodeId i, NodeId j, bool clamped = false) const;

private:
    friend class GraphBuilder;
    AttributedGraph() = default;

    std::vector<std::uint64_t> adj_offsets_; // n+1
    std::vector<NodeId> adj_;                // 2m, sorted per node
    std::vector<std::uint32_t> degrees_;     // n
    std::uint64_t edge_count_ = 0;           // m, undirected

    std::vector<std::uint64_t> attr_offsets_; // n+1
    std::vector<AttrEntry> attrs_;            // nnz, sorted per node
    bool attrs_binary_ = true;

    std::vector<std::string> node_labels_;
    std::vector<std::string> attr_names_;
    std::unordered_map<std::string, NodeId> node_index_;
    std::unordered_map<std::string, AttrId> attr_index_;
};

/// Accumulates nodes, edges and attribute entries, then normalizes and
/// freezes them into an AttributedGraph. Directed or repeated edge insertions
/// are symmetrized and deduplicated; self-loops are dropped and counted.
class GraphBuilder {
public:
    NodeId add_node(const std::string& label);
    NodeId intern_node(const std::string& label); // add if missing
    AttrId intern_attribute(const std::string& name);

    void add_edge(NodeId a, NodeId b);
    void set_attribute(NodeId node, AttrId attr, double value);

    std::size_t self_loops_dropped() const { return self_loops_; }

    /// rescale: min-max normalize each attribute column to [0,1]. The column
    /// population includes an implicit 0 for every node without an entry, so
    /// sparse binary data passes through unchanged. A constant column maps to
    /// 0 with a warning. With rescale off, any value outside [0,1] is an
    /// InputError.
    AttributedGraph build(bool rescale = true, std::vector<std::string>* warnings = nullptr);

private:
    std::vector<std::string> node_labels_;
    std::unordered_map<std::string, NodeId> node_index_;
    std::vector<std::string> attr_names_;
    std::unordered_map<std::string, AttrId> attr_index_;
    std::vector<std::vector<NodeId>> adj_;
    std::vector<std::unordered_map<AttrId, double>> rows_;
    std::size_t self_loops_ = 0;
};

/// A node set C together with everything derived from it: the boundary B
/// (nodes outside C with at least one edge into C), the internal edge list
/// (unordered pairs within C) and the cross edge list (one entry per boundary
/// edge, first endpoint in C).
struct Neighborhood {
    std::vector<NodeId> members;  // sorted, unique, size >= 2
    std::vector<NodeId> boundary; // sorted, unique, disjoint from members
    std::vector<std::pair<NodeId, NodeId>> internal_edges; // i < j
    std::vector<std::pair<NodeId, NodeId>> cross_edges;    // (member, boundary)

    std::size_t size() const { return members.size(); }
    bool contains(NodeId v) const;
};

/// Derive the Neighborhood for a member set. Members may induce a
/// disconnected subgraph; use induced_connected() to check separately.
/// Throws DegenerateNeighborhoodError when fewer than 2 distinct members,
/// InputError on an unknown node.
Neighborhood boundary_of(const AttributedGraph& g, std::span<const NodeId> members);

/// Egonet: the ego plus its direct neighbors. Throws
/// DegenerateNeighborhoodError for a degree-0 ego.
Neighborhood egonet_of(const AttributedGraph& g, NodeId ego);

/// Whether the subgraph induced on `members` is connected.
bool induced_connected(const AttributedGraph& g, std::span<const NodeId> members);

// --- ingestion ---------------------------------------------------------

enum class AttributeFormat { sparse_triples, dense_csv };

struct IngestOptions {
    AttributeFormat attribute_format = AttributeFormat::sparse_triples;
    bool rescale = true;        // min-max normalize each attribute column
    bool allow_isolated = false; // accept attribute rows for nodes absent from the edge list
};

struct IngestReport {
    std::size_t self_loops_dropped = 0;
    std::vector<std::string> warnings;
};

/// Parse an edge list ("u v" per line, whitespace or comma separated,
/// '#' comments) and an attribute source, and build a validated graph.
AttributedGraph load_graph(std::istream& edge_source, std::istream& attribute_source,
                           const IngestOptions& options = {}, IngestReport* report = nullptr);

AttributedGraph load_graph_files(const std::string& edge_path, const std::string& attr_path,
                                 const IngestOptions& options = {}, IngestReport* report = nullptr);

/// Canonical serialization, one "u v" line per undirected edge. Reloading
/// the written pair with rescale off reproduces the graph.
void write_edge_list(const AttributedGraph& g, std::ostream& out);
void write_attributes(const AttributedGraph& g, std::ostream& out); // sparse triples

/// SNAP-circles style membership file: per line, an id followed by member
/// node labels.
struct NamedNeighborhood {
    std::string id;
    std::vector<NodeId> members;
};

std::vector<NamedNeighborhood> load_neighborhoods(std::istream& in, const AttributedGraph& g);
std::vector<NamedNeighborhood> load_neighborhood_file(const std::string& path, const AttributedGraph& g);

/// One NamedNeighborhood per node, id = ego label, members = ego + neighbors.
/// Degree-0 egos yield singleton member sets that downstream scoring flags
/// as degenerate rather than dropping silently.
std::vector<NamedNeighborhood> all_egonets(const AttributedGraph& g);

} // namespace amen
