#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "amen/graph.hpp"
#include "amen/normality.hpp"

namespace amen {

/// Total community assignment, one id per node.
struct Partition {
    std::vector<std::uint32_t> community;
};

/// Total nominal attribute, one category per node.
struct NodeCategory {
    std::vector<std::uint32_t> category;
};

/// One scalar value per node.
struct ScalarAttribute {
    std::vector<double> value;

    /// Edge-end mean (1/2m) sum_i k_i x_i.
    double edge_end_mean(const AttributedGraph& g) const;
};

/// Newman modularity over ordered pairs (A_ii = 0). Exact for the
/// whole-graph partition: the numerator is assembled in integer arithmetic.
double modularity(const AttributedGraph& g, const Partition& p);

/// Nominal assortativity; formally the same sum as modularity with
/// categories in place of communities.
double assortativity_nominal(const AttributedGraph& g, const NodeCategory& c);

/// Scalar assortativity (1/2m) sum_ij (A_ij - k_i k_j/2m) x_i x_j.
double assortativity_scalar(const AttributedGraph& g, const ScalarAttribute& x);

/// 2 |E(C)| / |C|. Low values indicate anomalies.
double average_degree(const Neighborhood& nbhd);

/// cut(C) / (|C| (n - |C|)). Undefined when C covers the whole graph.
double cut_ratio(const AttributedGraph& g, const Neighborhood& nbhd);

/// cut(C) / min(vol(C), vol(G \ C)). Undefined when either volume is 0.
double conductance(const AttributedGraph& g, const Neighborhood& nbhd);

/// Fraction of members with fewer than half their edges inside.
double flake_odf(const AttributedGraph& g, const Neighborhood& nbhd);

/// Similarity-weighted symmetric normalized cut under uniform attribute
/// weights. Edge weights use the dot product for dot and binary_mixed
/// similarity, and full-space Kronecker agreement for delta; the common 1/d
/// scale cancels in the cut/volume ratios and is omitted.
double aw_ncut_uniform(const AttributedGraph& g, const Neighborhood& nbhd, SimilarityKind sim);

/// Same, with the precomputed total weighted volume of the graph (sum of
/// weighted degrees over all nodes), for batch evaluation.
double aw_ncut_uniform(const AttributedGraph& g, const Neighborhood& nbhd, SimilarityKind sim,
                       double total_weighted_volume);

/// Sum over all nodes of their similarity-weighted degree (unscaled, matching
/// aw_ncut_uniform).
double total_weighted_volume(const AttributedGraph& g, SimilarityKind sim);

} // namespace amen
