#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "amen/graph.hpp"

namespace amen {

/// Node similarity used when scoring a neighborhood.
///   dot          weighted dot product of attribute rows
///   delta        Kronecker agreement per attribute (absent entries count as 0)
///   binary_mixed dot product internally, presence agreement at the boundary;
///                only valid when every stored attribute value is 1
enum class SimilarityKind { dot, delta, binary_mixed };

const char* to_string(SimilarityKind k);
std::optional<SimilarityKind> similarity_from_string(std::string_view s);

// Pair convention for the internal sums: all ordered pairs (i,j) in CxC
// including i == j (A_ii = 0). This is what makes the normalization ceiling
// |C|^2 exact. Flip to exclude the diagonal from both the internal covariance
// and its lower bound.
inline constexpr bool kIncludeDiagonalPairs = true;

struct RelevanceOptions {
    bool include_diagonal_pairs = kIncludeDiagonalPairs;
};

/// Per-attribute decomposition of a neighborhood's normality, restricted to
/// the supported attributes (those exhibited by at least one member).
/// Attributes outside the support are excluded from comparison and focus
/// candidacy; their components are identically 0.
///
/// For supported attribute f (stored at indexs parallel to `attrs`):
///   x_internal  covariance-style internal consistency contribution
///   x_external  nonpositive boundary penalty contribution
///   x_volume    surprise-weighted internal volume (each edge twice)
///   x_internal_hat = (x_internal - i_min) / (i_max - i_min), in [0,1]
///   x_external_hat = x_external / (x_volume - x_external), in [-1,0], 0/0 -> 0
///   x = x_internal_hat + x_external_hat, in [-1,1]
struct RelevanceVector {
    std::vector<AttrId> attrs; // supported attribute ids, ascending
    std::vector<double> x_internal;
    std::vector<double> x_external;
    std::vector<double> x_volume;
    std::vector<double> x_internal_hat;
    std::vector<double> x_external_hat;
    std::vector<double> x;
    double i_min = 0.0; // -(sum_{i,j in C} k_i k_j) / 2m, <= 0
    double i_max = 0.0; // |C|^2
    std::size_t attribute_count = 0; // d of the full graph
    std::size_t member_count = 0;

    std::size_t support_size() const { return attrs.size(); }
    bool supported(AttrId f) const;
    /// x(f), 0 when f is unsupported.
    double x_at(AttrId f) const;
};

/// Build the relevance vector for one neighborhood. O(|E(C)| + |E_B| + nnz(C))
/// row-merge work for dot similarity; delta variants add a pass over the
/// support per distinct-value group. Throws on m == 0, a degenerate
/// neighborhood, or binary_mixed over non-binary attributes.
RelevanceVector relevance_vector(const AttributedGraph& g, const Neighborhood& nbhd,
                                 SimilarityKind sim, const RelevanceOptions& opt = {});

/// Direct-summation internal consistency sum_{i,j in C}(A_ij - k_i k_j/2m) s(x_i,x_j|w).
/// w is a dense weight vector of dimension d, all entries >= 0.
double internal_consistency(const AttributedGraph& g, const Neighborhood& nbhd,
                            std::span<const double> w, SimilarityKind sim,
                            const RelevanceOptions& opt = {});

/// Direct-summation boundary penalty; always <= 0, and 0 when the boundary
/// is empty. Each cross edge weighted by its null-model surprise
/// 1 - min(1, k_i k_b/2m).
double external_separability(const AttributedGraph& g, const Neighborhood& nbhd,
                             std::span<const double> w, SimilarityKind sim);

/// normality = internal_consistency + external_separability (unnormalized).
double normality(const AttributedGraph& g, const Neighborhood& nbhd, std::span<const double> w,
                 SimilarityKind sim, const RelevanceOptions& opt = {});

/// Size-invariant score w . x over the supported attributes. w is given as
/// sparse (attr, weight) pairs; weights must be nonnegative.
double normalized_normality(const RelevanceVector& rv,
                            std::span<const std::pair<AttrId, double>> w);

} // namespace amen
