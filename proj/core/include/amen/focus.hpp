#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amen/normality.hpp"

namespace amen {

enum class NormKind { l1, l2, topk };

const char* to_string(NormKind n);
std::optional<NormKind> norm_from_string(std::string_view s);

/// Solution of max_w w.x under the chosen norm constraint.
struct FocusResult {
    /// Nonzero weights, sorted by weight descending then attribute ascending.
    std::vector<std::pair<AttrId, double>> weights;
    NormKind norm = NormKind::l1;
    std::size_t k = 0;     // only meaningful for topk
    double score = -1.0;   // the attained objective
    bool anomalous = true; // score < 0
    bool no_focus = false; // no supported attribute existed; score floored at -1
    bool truncated_k = false; // topk asked for more attributes than supported

    std::vector<AttrId> focus_attributes() const;
};

/// L1 constraint: one-hot on the largest x entry (ties to the lowest
/// attribute id). With no positive entry the largest negative entry is still
/// selected and the result is flagged anomalous. With no supported attribute
/// at all the score floors at -1.
FocusResult focus_l1(const RelevanceVector& rv);

/// L2 constraint: weights proportional to the positive x entries, attaining
/// ||x+||_2. Falls back to the L1 selection when no entry is positive.
FocusResult focus_l2(const RelevanceVector& rv);

/// Cap weights at 1/k: uniform 1/k mass on the k largest x entries; the score
/// reported is their mean. When fewer than k attributes are supported, all of
/// them are taken at 1/count and the result is marked truncated.
FocusResult focus_topk(const RelevanceVector& rv, std::size_t k);

FocusResult solve_focus(const RelevanceVector& rv, NormKind norm, std::size_t k = 1);

/// One scored entry of a ranking batch. Entries that failed to score carry
/// the error text instead of a result and sort after all scored entries.
struct RankedNeighborhood {
    std::string id;
    std::size_t member_count = 0;
    std::size_t boundary_size = 0;
    FocusResult focus;
    std::size_t rank = 0; // 1 = most anomalous
    std::string error;    // empty when scored
};

/// Score every neighborhood and sort most-anomalous first (ascending score,
/// ties by id). Per-neighborhood failures are isolated into flagged entries.
/// `jobs` bounds the number of worker threads; output is identical for any
/// job count.
std::vector<RankedNeighborhood> rank_neighborhoods(const AttributedGraph& g,
                                                   const std::vector<NamedNeighborhood>& nbhds,
                                                   SimilarityKind sim, NormKind norm,
                                                   std::size_t k = 1, unsigned jobs = 1);

} // namespace amen
