#include "amen/focus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "amen/parallel.hpp"

namespace amen {

const char* to_string(NormKind n) {
    switch (n) {
        case NormKind::l1: return "l1";
        case NormKind::l2: return "l2";
        case NormKind::topk: return "topk";
    }
    return "?";
}

std::optional<NormKind> norm_from_string(std::string_view s) {
    if (s == "l1") return NormKind::l1;
    if (s == "l2") return NormKind::l2;
    if (s == "topk") return NormKind::topk;
    return std::nullopt;
}

std::vector<AttrId> FocusResult::focus_attributes() const {
    std::vector<AttrId> out;
    out.reserve(weights.size());
    for (const auto& [f, w] : weights)
        if (w > 0.0) out.push_back(f);
    return out;
}

namespace {

void require_nonempty(const RelevanceVector& rv) {
    if (rv.attribute_count == 0)
        throw InputError("relevance vector over an empty attribute universe");
}

FocusResult no_focus_result(NormKind norm) {
    FocusResult r;
    r.norm = norm;
    r.score = -1.0; // the measure's floor
    r.anomalous = true;
    r.no_focus = true;
    return r;
}

void sort_weights(std::vector<std::pair<AttrId, double>>& w) {
    std::sort(w.begin(), w.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
}

std::size_t argmax_entry(const RelevanceVector& rv) {
    // ties broken by lowest attribute id; attrs are stored ascending
    std::size_t best = 0;
    for (std::size_t at = 1; at < rv.x.size(); ++at)
        if (rv.x[at] > rv.x[best]) best = at;
    return best;
}

} // namespace

FocusResult focus_l1(const RelevanceVector& rv) {
    require_nonempty(rv);
    if (rv.attrs.empty()) return no_focus_result(NormKind::l1);

    const std::size_t best = argmax_entry(rv);
    FocusResult r;
    r.norm = NormKind::l1;
    r.score = rv.x[best];
    r.anomalous = r.score < 0.0;
    r.weights.emplace_back(rv.attrs[best], 1.0);
    return r;
}

FocusResult focus_l2(const RelevanceVector& rv) {
    require_nonempty(rv);
    if (rv.attrs.empty()) return no_focus_result(NormKind::l2);

    double positive_sq = 0.0;
    for (double v : rv.x)
        if (v > 0.0) positive_sq += v * v;

    if (positive_sq == 0.0) {
        FocusResult r = focus_l1(rv);
        r.norm = NormKind::l2;
        return r;
    }

    FocusResult r;
    r.norm = NormKind::l2;
    r.score = std::sqrt(positive_sq);
    r.anomalous = false;
    for (std::size_t at = 0; at < rv.x.size(); ++at)
        if (rv.x[at] > 0.0) r.weights.emplace_back(rv.attrs[at], rv.x[at] / r.score);
    sort_weights(r.weights);
    return r;
}

FocusResult focus_topk(const RelevanceVector& rv, std::size_t k) {
    require_nonempty(rv);
    if (k < 1 || k > rv.attribute_count)
        throw InputError("k must be in [1, d]");
    if (rv.attrs.empty()) {
        FocusResult r = no_focus_result(NormKind::topk);
        r.k = k;
        return r;
    }

    FocusResult r;
    r.norm = NormKind::topk;
    r.k = k;
    std::size_t take = k;
    if (take > rv.attrs.size()) {
        take = rv.attrs.size();
        r.truncated_k = true;
    }

    std::vector<std::size_t> order(rv.attrs.size());
    std::iota(order.begin(), order.end(), 0);
    // largest x first, ties by lowest attribute id (= lowest support index)
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rv.x[a] > rv.x[b]; });

    double sum = 0.0;
    const double weight = 1.0 / static_cast<double>(take);
    for (std::size_t t = 0; t < take; ++t) {
        sum += rv.x[order[t]];
        r.weights.emplace_back(rv.attrs[order[t]], weight);
    }
    r.score = sum / static_cast<double>(take);
    r.anomalous = r.score < 0.0;
    sort_weights(r.weights);
    return r;
}

FocusResult solve_focus(const RelevanceVector& rv, NormKind norm, std::size_t k) {
    switch (norm) {
        case NormKind::l1: return focus_l1(rv);
        case NormKind::l2: return focus_l2(rv);
        case NormKind::topk: return focus_topk(rv, k);
    }
    throw InputError("unknown norm");
}

std::vector<RankedNeighborhood> rank_neighborhoods(const AttributedGraph& g,
                                                   const std::vector<NamedNeighborhood>& nbhds,
                                                   SimilarityKind sim, NormKind norm,
                                                   std::size_t k, unsigned jobs) {
    std::vector<RankedNeighborhood> out(nbhds.size());

    auto score_one = [&](std::size_t idx) {
        RankedNeighborhood& entry = out[idx];
        entry.id = nbhds[idx].id;
        entry.member_count = nbhds[idx].members.size();
        try {
            Neighborhood nb = boundary_of(g, nbhds[idx].members);
            entry.member_count = nb.members.size();
            entry.boundary_size = nb.boundary.size();
            entry.focus = solve_focus(relevance_vector(g, nb, sim), norm, k);
        } catch (const Error& e) {
            entry.error = e.what();
        }
    };

    parallel_for(nbhds.size(), jobs, score_one);

    std::sort(out.begin(), out.end(), [](const RankedNeighborhood& a, const RankedNeighborhood& b) {
        if (a.error.empty() != b.error.empty()) return a.error.empty(); // flagged entries last
        if (a.error.empty() && a.focus.score != b.focus.score)
            return a.focus.score < b.focus.score;
        return a.id < b.id;
    });
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

} // namespace amen
