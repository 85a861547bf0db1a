#include "amen/baselines.hpp"

#include <algorithm>
#include <cstdint>

namespace amen {

double ScalarAttribute::edge_end_mean(const AttributedGraph& g) const {
    double acc = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i) acc += g.degree(i) * value[i];
    return acc / g.two_m();
}

namespace {

void require_total(std::size_t assigned, const AttributedGraph& g, const char* what) {
    if (assigned != g.node_count())
        throw InputError(std::string(what) + " must assign every node exactly once");
}

// (1/2m) sum_ij (A_ij - k_i k_j / 2m) [group_i == group_j], assembled as an
// integer numerator over 4m^2 so that the whole-graph case is exactly 0.
double grouped_null_deviation(const AttributedGraph& g, std::span<const std::uint32_t> group) {
    if (g.edge_count() == 0) throw NullModelError("measure undefined: graph has no edges");

    std::uint32_t groups = 0;
    for (auto c : group) groups = std::max(groups, c + 1);
    std::vector<std::uint64_t> internal_ordered(groups, 0); // sum_ij A_ij within group
    std::vector<std::uint64_t> degree_sum(groups, 0);

    for (NodeId i = 0; i < g.node_count(); ++i) {
        degree_sum[group[i]] += g.degree(i);
        for (NodeId j : g.neighbors(i))
            if (group[i] == group[j]) ++internal_ordered[group[i]];
    }

    std::int64_t numerator = 0;
    const std::int64_t two_m = static_cast<std::int64_t>(2 * g.edge_count());
    for (std::uint32_t c = 0; c < groups; ++c) {
        numerator += two_m * static_cast<std::int64_t>(internal_ordered[c]);
        numerator -= static_cast<std::int64_t>(degree_sum[c] * degree_sum[c]);
    }
    return static_cast<double>(numerator) / (static_cast<double>(two_m) * static_cast<double>(two_m));
}

} // namespace

double modularity(const AttributedGraph& g, const Partition& p) {
    require_total(p.community.size(), g, "partition");
    return grouped_null_deviation(g, p.community);
}

double assortativity_nominal(const AttributedGraph& g, const NodeCategory& c) {
    require_total(c.category.size(), g, "category assignment");
    return grouped_null_deviation(g, c.category);
}

double assortativity_scalar(const AttributedGraph& g, const ScalarAttribute& x) {
    require_total(x.value.size(), g, "scalar attribute");
    if (g.edge_count() == 0) throw NullModelError("measure undefined: graph has no edges");
    const double two_m = g.two_m();

    double adjacent = 0.0; // sum over ordered edges of x_i x_j
    double weighted = 0.0; // sum_i k_i x_i
    for (NodeId i = 0; i < g.node_count(); ++i) {
        weighted += g.degree(i) * x.value[i];
        for (NodeId j : g.neighbors(i)) adjacent += x.value[i] * x.value[j];
    }
    return (adjacent - weighted * weighted / two_m) / two_m;
}

double average_degree(const Neighborhood& nbhd) {
    return 2.0 * static_cast<double>(nbhd.internal_edges.size()) /
           static_cast<double>(nbhd.members.size());
}

double cut_ratio(const AttributedGraph& g, const Neighborhood& nbhd) {
    const std::uint64_t outside = g.node_count() - nbhd.members.size();
    if (outside == 0)
        throw MeasureDomainError("cut ratio undefined when the neighborhood covers the graph");
    return static_cast<double>(nbhd.cross_edges.size()) /
           (static_cast<double>(nbhd.members.size()) * static_cast<double>(outside));
}

double conductance(const AttributedGraph& g, const Neighborhood& nbhd) {
    std::uint64_t vol_c = 0;
    for (NodeId i : nbhd.members) vol_c += g.degree(i);
    const std::uint64_t vol_rest = 2 * g.edge_count() - vol_c;
    const std::uint64_t denom = std::min(vol_c, vol_rest);
    if (denom == 0)
        throw MeasureDomainError("conductance undefined: one side has zero volume");
    return static_cast<double>(nbhd.cross_edges.size()) / static_cast<double>(denom);
}

double flake_odf(const AttributedGraph& g, const Neighborhood& nbhd) {
    std::vector<std::uint32_t> internal_degree(nbhd.members.size(), 0);
    auto slot = [&](NodeId v) {
        return static_cast<std::size_t>(
            std::lower_bound(nbhd.members.begin(), nbhd.members.end(), v) - nbhd.members.begin());
    };
    for (const auto& [i, j] : nbhd.internal_edges) {
        ++internal_degree[slot(i)];
        ++internal_degree[slot(j)];
    }
    std::size_t poor = 0;
    for (std::size_t a = 0; a < nbhd.members.size(); ++a)
        if (2 * internal_degree[a] < g.degree(nbhd.members[a])) ++poor;
    return static_cast<double>(poor) / static_cast<double>(nbhd.members.size());
}

namespace {

// End-node similarity under uniform attribute weights. The common 1/d factor
// cancels in the cut/volume ratios, so the sums are kept unscaled.
double uniform_edge_similarity(const AttributedGraph& g, NodeId u, NodeId v, SimilarityKind sim) {
    if (g.attribute_count() == 0) return 0.0;
    auto ru = g.attributes(u);
    auto rv = g.attributes(v);
    if (sim == SimilarityKind::delta) {
        // agreements over the full attribute space, absent = 0
        std::size_t iu = 0, iv = 0;
        std::size_t disagreements = 0;
        while (iu < ru.size() && iv < rv.size()) {
            if (ru[iu].attr == rv[iv].attr) {
                if (ru[iu].value != rv[iv].value) ++disagreements;
                ++iu, ++iv;
            } else if (ru[iu].attr < rv[iv].attr) {
                ++disagreements, ++iu;
            } else {
                ++disagreements, ++iv;
            }
        }
        disagreements += (ru.size() - iu) + (rv.size() - iv);
        return static_cast<double>(g.attribute_count()) - static_cast<double>(disagreements);
    }
    // dot product; binary_mixed edges are weighted the same way
    double acc = 0.0;
    std::size_t iu = 0, iv = 0;
    while (iu < ru.size() && iv < rv.size()) {
        if (ru[iu].attr == rv[iv].attr) {
            acc += ru[iu].value * rv[iv].value;
            ++iu, ++iv;
        } else if (ru[iu].attr < rv[iv].attr) {
            ++iu;
        } else {
            ++iv;
        }
    }
    return acc;
}

} // namespace

double total_weighted_volume(const AttributedGraph& g, SimilarityKind sim) {
    double total = 0.0;
    for (NodeId i = 0; i < g.node_count(); ++i)
        for (NodeId j : g.neighbors(i)) total += uniform_edge_similarity(g, i, j, sim);
    return total;
}

double aw_ncut_uniform(const AttributedGraph& g, const Neighborhood& nbhd, SimilarityKind sim) {
    return aw_ncut_uniform(g, nbhd, sim, total_weighted_volume(g, sim));
}

double aw_ncut_uniform(const AttributedGraph& g, const Neighborhood& nbhd, SimilarityKind sim,
                       double total_volume) {
    if (g.edge_count() == 0) throw NullModelError("measure undefined: graph has no edges");

    double cut = 0.0;
    for (const auto& [i, b] : nbhd.cross_edges) cut += uniform_edge_similarity(g, i, b, sim);

    double vol_c = 0.0;
    for (NodeId i : nbhd.members)
        for (NodeId j : g.neighbors(i)) vol_c += uniform_edge_similarity(g, i, j, sim);
    const double vol_rest = total_volume - vol_c;

    if (vol_c == 0.0 || vol_rest == 0.0)
        throw MeasureDomainError("attribute-weighted cut undefined: zero weighted volume");
    return cut / vol_c + cut / vol_rest;
}

} // namespace amen
