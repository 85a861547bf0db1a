#include "amen/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace amen {

bool AttributedGraph::has_edge(NodeId i, NodeId j) const {
    auto nbrs = neighbors(i);
    return std::binary_search(nbrs.begin(), nbrs.end(), j);
}

std::optional<NodeId> AttributedGraph::find_node(const std::string& label) const {
    auto it = node_index_.find(label);
    if (it == node_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<AttrId> AttributedGraph::find_attribute(const std::string& name) const {
    auto it = attr_index_.find(name);
    if (it == attr_index_.end()) return std::nullopt;
    return it->second;
}

double AttributedGraph::expected_edge_probability(NodeId i, NodeId j, bool clamped) const {
    if (edge_count_ == 0)
        throw NullModelError("null model undefined: graph has no edges");
    double p = static_cast<double>(degrees_[i]) * static_cast<double>(degrees_[j]) / two_m();
    return clamped ? std::min(1.0, p) : p;
}

// --- GraphBuilder -------------------------------------------------------

NodeId GraphBuilder::add_node(const std::string& label) {
    auto [it, inserted] = node_index_.try_emplace(label, static_cast<NodeId>(node_labels_.size()));
    if (inserted) {
        node_labels_.push_back(label);
        adj_.emplace_back();
        rows_.emplace_back();
    }
    return it->second;
}

NodeId GraphBuilder::intern_node(const std::string& label) { return add_node(label); }

AttrId GraphBuilder::intern_attribute(const std::string& name) {
    auto [it, inserted] = attr_index_.try_emplace(name, static_cast<AttrId>(attr_names_.size()));
    if (inserted) attr_names_.push_back(name);
    return it->second;
}

void GraphBuilder::add_edge(NodeId a, NodeId b) {
    if (a == b) {
        ++self_loops_;
        return;
    }
    adj_[a].push_back(b);
    adj_[b].push_back(a);
}

void GraphBuilder::set_attribute(NodeId node, AttrId attr, double value) {
    rows_[node][attr] = value; // last write wins
}

AttributedGraph GraphBuilder::build(bool rescale, std::vector<std::string>* warnings) {
    const std::size_t n = node_labels_.size();
    const std::size_t d = attr_names_.size();

    AttributedGraph g;
    g.node_labels_ = std::move(node_labels_);
    g.attr_names_ = std::move(attr_names_);
    g.node_index_ = std::move(node_index_);
    g.attr_index_ = std::move(attr_index_);

    // Symmetrize + dedup adjacency.
    g.adj_offsets_.assign(n + 1, 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto& nb = adj_[i];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        total += nb.size();
        g.adj_offsets_[i + 1] = total;
    }
    g.adj_.reserve(total);
    g.degrees_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        g.adj_.insert(g.adj_.end(), adj_[i].begin(), adj_[i].end());
        g.degrees_[i] = static_cast<std::uint32_t>(adj_[i].size());
        adj_[i].clear();
        adj_[i].shrink_to_fit();
    }
    g.edge_count_ = total / 2;

    // Per-attribute min/max. The population includes an implicit 0 whenever
    // some node lacks the attribute, so absence and an explicit 0 agree.
    std::vector<double> mins(d, std::numeric_limits<double>::infinity());
    std::vector<double> maxs(d, -std::numeric_limits<double>::infinity());
    std::vector<std::uint64_t> counts(d, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [f, v] : rows_[i]) {
            mins[f] = std::min(mins[f], v);
            maxs[f] = std::max(maxs[f], v);
            ++counts[f];
        }
    }
    for (std::size_t f = 0; f < d; ++f) {
        if (counts[f] == 0) continue;
        if (counts[f] < n) { // some node lacks it: 0 is in the column
            mins[f] = std::min(mins[f], 0.0);
            maxs[f] = std::max(maxs[f], 0.0);
        }
    }

    if (!rescale) {
        for (std::size_t f = 0; f < d; ++f) {
            if (counts[f] > 0 && (mins[f] < 0.0 || maxs[f] > 1.0))
                throw InputError("attribute '" + g.attr_names_[f] +
                                 "' has values outside [0,1] and rescaling is disabled");
        }
    } else {
        for (std::size_t f = 0; f < d; ++f) {
            if (counts[f] > 0 && maxs[f] == mins[f] && warnings)
                warnings->push_back("attribute '" + g.attr_names_[f] +
                                    "' is constant; all values mapped to 0");
        }
    }

    g.attr_offsets_.assign(n + 1, 0);
    std::vector<AttrEntry> row;
    for (std::size_t i = 0; i < n; ++i) {
        row.clear();
        for (const auto& [f, v] : rows_[i]) {
            double out = v;
            if (rescale) {
                const double span = maxs[f] - mins[f];
                out = span == 0.0 ? 0.0 : (v - mins[f]) / span;
            }
            if (out != 0.0) row.push_back({f, out});
        }
        std::sort(row.begin(), row.end(),
                  [](const AttrEntry& a, const AttrEntry& b) { return a.attr < b.attr; });
        for (const auto& e : row) {
            g.attrs_.push_back(e);
            if (e.value != 1.0) g.attrs_binary_ = false;
        }
        g.attr_offsets_[i + 1] = g.attrs_.size();
        rows_[i].clear();
    }
    return g;
}

// --- neighborhoods ------------------------------------------------------

bool Neighborhood::contains(NodeId v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

Neighborhood boundary_of(const AttributedGraph& g, std::span<const NodeId> members) {
    Neighborhood nb;
    nb.members.assign(members.begin(), members.end());
    std::sort(nb.members.begin(), nb.members.end());
    nb.members.erase(std::unique(nb.members.begin(), nb.members.end()), nb.members.end());

    for (NodeId v : nb.members)
        if (v >= g.node_count())
            throw InputError("unknown node id " + std::to_string(v));
    if (nb.members.size() < 2)
        throw DegenerateNeighborhoodError("neighborhood needs at least 2 distinct members");

    // Membership via binary search keeps the scan independent of graph size.
    for (NodeId i : nb.members) {
        for (NodeId j : g.neighbors(i)) {
            if (nb.contains(j)) {
                if (i < j) nb.internal_edges.emplace_back(i, j);
            } else {
                nb.cross_edges.emplace_back(i, j);
                nb.boundary.push_back(j);
            }
        }
    }
    std::sort(nb.boundary.begin(), nb.boundary.end());
    nb.boundary.erase(std::unique(nb.boundary.begin(), nb.boundary.end()), nb.boundary.end());
    return nb;
}

Neighborhood egonet_of(const AttributedGraph& g, NodeId ego) {
    if (ego >= g.node_count())
        throw InputError("unknown node id " + std::to_string(ego));
    if (g.degree(ego) == 0)
        throw DegenerateNeighborhoodError("egonet of a degree-0 node is degenerate");
    std::vector<NodeId> members(g.neighbors(ego).begin(), g.neighbors(ego).end());
    members.push_back(ego);
    return boundary_of(g, members);
}

bool induced_connected(const AttributedGraph& g, std::span<const NodeId> members) {
    std::vector<NodeId> sorted(members.begin(), members.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.empty()) return true;

    auto inside = [&](NodeId v) { return std::binary_search(sorted.begin(), sorted.end(), v); };
    std::vector<NodeId> stack{sorted[0]};
    std::vector<char> seen(sorted.size(), 0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (NodeId v : g.neighbors(u)) {
            if (!inside(v)) continue;
            auto idx = static_cast<std::size_t>(
                std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
            if (!seen[idx]) {
                seen[idx] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == sorted.size();
}

// --- ingestion ----------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == ',' || c == '\r') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

bool skippable(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true; // blank
}

double parse_value(const std::string& tok, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        if (!std::isfinite(v)) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("malformed numeric value '" + tok + "'", line_no);
    }
}

void parse_edges(std::istream& in, GraphBuilder& b,
                 std::unordered_map<std::string, char>& known_nodes) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto toks = tokenize(line);
        if (toks.size() != 2)
            throw ParseError("expected two node tokens", line_no);
        b.add_edge(b.intern_node(toks[0]), b.intern_node(toks[1]));
        known_nodes.emplace(toks[0], 1);
        known_nodes.emplace(toks[1], 1);
    }
}

void parse_sparse_attributes(std::istream& in, GraphBuilder& b, const IngestOptions& opt,
                             const std::unordered_map<std::string, char>& known_nodes) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto toks = tokenize(line);
        if (toks.size() != 3)
            throw ParseError("expected 'node attribute value'", line_no);
        if (!opt.allow_isolated && !known_nodes.count(toks[0]))
            throw ParseError("attribute row for node '" + toks[0] + "' absent from edge list",
                             line_no);
        b.set_attribute(b.intern_node(toks[0]), b.intern_attribute(toks[1]),
                        parse_value(toks[2], line_no));
    }
}

void parse_dense_attributes(std::istream& in, GraphBuilder& b, const IngestOptions& opt,
                            const std::unordered_map<std::string, char>& known_nodes) {
    std::string line;
    std::size_t line_no = 0;
    std::vector<AttrId> columns;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto toks = tokenize(line);
        if (!have_header) {
            if (toks.size() < 2)
                throw ParseError("dense header needs a node column plus attribute names", line_no);
            for (std::size_t c = 1; c < toks.size(); ++c)
                columns.push_back(b.intern_attribute(toks[c]));
            have_header = true;
            continue;
        }
        if (toks.size() != columns.size() + 1)
            throw ParseError("row has " + std::to_string(toks.size() - 1) + " values, header has " +
                                 std::to_string(columns.size()),
                             line_no);
        if (!opt.allow_isolated && !known_nodes.count(toks[0]))
            throw ParseError("attribute row for node '" + toks[0] + "' absent from edge list",
                             line_no);
        NodeId node = b.intern_node(toks[0]);
        for (std::size_t c = 0; c < columns.size(); ++c)
            b.set_attribute(node, columns[c], parse_value(toks[c + 1], line_no));
    }
}

} // namespace

AttributedGraph load_graph(std::istream& edge_source, std::istream& attribute_source,
                           const IngestOptions& options, IngestReport* report) {
    GraphBuilder b;
    std::unordered_map<std::string, char> known_nodes;
    parse_edges(edge_source, b, known_nodes);

    if (options.attribute_format == AttributeFormat::sparse_triples)
        parse_sparse_attributes(attribute_source, b, options, known_nodes);
    else
        parse_dense_attributes(attribute_source, b, options, known_nodes);

    std::vector<std::string> warnings;
    AttributedGraph g = b.build(options.rescale, &warnings);
    if (report) {
        report->self_loops_dropped = b.self_loops_dropped();
        report->warnings = std::move(warnings);
    }
    return g;
}

AttributedGraph load_graph_files(const std::string& edge_path, const std::string& attr_path,
                                 const IngestOptions& options, IngestReport* report) {
    std::ifstream edges(edge_path);
    if (!edges) throw InputError("cannot open edge file: " + edge_path);
    std::ifstream attrs(attr_path);
    if (!attrs) throw InputError("cannot open attribute file: " + attr_path);
    return load_graph(edges, attrs, options, report);
}

void write_edge_list(const AttributedGraph& g, std::ostream& out) {
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (NodeId j : g.neighbors(i))
            if (i < j) out << g.node_label(i) << ' ' << g.node_label(j) << '\n';
}

void write_attributes(const AttributedGraph& g, std::ostream& out) {
    char buf[64];
    for (NodeId i = 0; i < g.node_count(); ++i) {
        for (const auto& e : g.attributes(i)) {
            std::snprintf(buf, sizeof buf, "%.17g", e.value);
            out << g.node_label(i) << ' ' << g.attribute_name(e.attr) << ' ' << buf << '\n';
        }
    }
}

std::vector<NamedNeighborhood> load_neighborhoods(std::istream& in, const AttributedGraph& g) {
    std::vector<NamedNeighborhood> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skippable(line)) continue;
        auto toks = tokenize(line);
        if (toks.size() < 2)
            throw ParseError("neighborhood line needs an id and at least one member", line_no);
        NamedNeighborhood nb;
        nb.id = toks[0];
        for (std::size_t t = 1; t < toks.size(); ++t) {
            auto node = g.find_node(toks[t]);
            if (!node)
                throw ParseError("unknown member node '" + toks[t] + "'", line_no);
            nb.members.push_back(*node);
        }
        out.push_back(std::move(nb));
    }
    return out;
}

std::vector<NamedNeighborhood> load_neighborhood_file(const std::string& path,
                                                      const AttributedGraph& g) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open neighborhood file: " + path);
    return load_neighborhoods(in, g);
}

std::vector<NamedNeighborhood> all_egonets(const AttributedGraph& g) {
    std::vector<NamedNeighborhood> out;
    out.reserve(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        NamedNeighborhood nb;
        nb.id = g.node_label(v);
        nb.members.assign(g.neighbors(v).begin(), g.neighbors(v).end());
        nb.members.push_back(v);
        out.push_back(std::move(nb));
    }
    return out;
}

} // namespace amen
