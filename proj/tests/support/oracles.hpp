#pragma once

// Brute-force reference implementations used only by tests. Everything here
// works from the printed formulas by direct enumeration, independent of the
// accumulation strategies in core.

#include <span>
#include <vector>

#include "amen/baselines.hpp"
#include "amen/graph.hpp"
#include "amen/normality.hpp"

namespace amen::oracle {

/// Dense attribute lookup by linear row scan; absent = 0.
double attr_value(const AttributedGraph& g, NodeId i, AttrId f);

/// Adjacency by linear scan of the neighbor list.
bool adjacent(const AttributedGraph& g, NodeId i, NodeId j);

/// Attributes exhibited by at least one member (the comparison support).
std::vector<char> support_mask(const AttributedGraph& g, std::span<const NodeId> members);

/// Per-attribute similarity contribution sigma_f(i, j) under the similarity
/// kind, honoring the support restriction for delta comparisons.
double sigma(const AttributedGraph& g, NodeId i, NodeId j, AttrId f, SimilarityKind sim,
             bool external, const std::vector<char>& support);

double internal_consistency(const AttributedGraph& g, std::span<const NodeId> members,
                            std::span<const double> w, SimilarityKind sim,
                            bool include_diagonal = true);
double external_separability(const AttributedGraph& g, std::span<const NodeId> members,
                             std::span<const double> w, SimilarityKind sim);
double normality(const AttributedGraph& g, std::span<const NodeId> members,
                 std::span<const double> w, SimilarityKind sim, bool include_diagonal = true);

struct RelevanceOracle {
    std::vector<double> x_internal;     // size d, 0 outside support
    std::vector<double> x_external;
    std::vector<double> x_volume;
    std::vector<double> x_internal_hat; // only meaningful inside support
    std::vector<double> x_external_hat;
    std::vector<double> x;
    std::vector<char> support;
    double i_min = 0.0;
    double i_max = 0.0;
};

RelevanceOracle relevance(const AttributedGraph& g, std::span<const NodeId> members,
                          SimilarityKind sim, bool include_diagonal = true);

// Appendix-style measures by direct pair enumeration.
double modularity(const AttributedGraph& g, std::span<const std::uint32_t> community);
double assortativity_scalar(const AttributedGraph& g, std::span<const double> x);
double average_degree(const AttributedGraph& g, std::span<const NodeId> members);
double cut_ratio(const AttributedGraph& g, std::span<const NodeId> members);
double conductance(const AttributedGraph& g, std::span<const NodeId> members);
double flake_odf(const AttributedGraph& g, std::span<const NodeId> members);
double aw_ncut_uniform(const AttributedGraph& g, std::span<const NodeId> members,
                       SimilarityKind sim);

/// Boundary of a member set by scanning every node of the graph.
std::vector<NodeId> boundary(const AttributedGraph& g, std::span<const NodeId> members);

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> xs, std::span<const double> ys);

} // namespace amen::oracle
