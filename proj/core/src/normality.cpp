#include "amen/normality.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>
#include <tuple>

namespace amen {

const char* to_string(SimilarityKind k) {
    switch (k) {
        case SimilarityKind::dot: return "dot";
        case SimilarityKind::delta: return "delta";
        case SimilarityKind::binary_mixed: return "binary-mixed";
    }
    return "?";
}

std::optional<SimilarityKind> similarity_from_string(std::string_view s) {
    if (s == "dot") return SimilarityKind::dot;
    if (s == "delta") return SimilarityKind::delta;
    if (s == "binary-mixed" || s == "binary_mixed") return SimilarityKind::binary_mixed;
    return std::nullopt;
}

bool RelevanceVector::supported(AttrId f) const {
    return std::binary_search(attrs.begin(), attrs.end(), f);
}

double RelevanceVector::x_at(AttrId f) const {
    auto it = std::lower_bound(attrs.begin(), attrs.end(), f);
    if (it == attrs.end() || *it != f) return 0.0;
    return x[static_cast<std::size_t>(it - attrs.begin())];
}

namespace {

void require_valid(const AttributedGraph& g, const Neighborhood& nbhd, SimilarityKind sim) {
    if (g.edge_count() == 0)
        throw NullModelError("normality undefined: graph has no edges");
    if (nbhd.members.size() < 2)
        throw DegenerateNeighborhoodError("neighborhood needs at least 2 members");
    if (sim == SimilarityKind::binary_mixed && !g.attributes_binary())
        throw InputError("binary-mixed similarity requires binary attribute values");
}

std::vector<AttrId> support_of(const AttributedGraph& g, std::span<const NodeId> members) {
    std::vector<AttrId> support;
    for (NodeId i : members)
        for (const auto& e : g.attributes(i)) support.push_back(e.attr);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support;
}

std::size_t support_index(const std::vector<AttrId>& support, AttrId f) {
    return static_cast<std::size_t>(
        std::lower_bound(support.begin(), support.end(), f) - support.begin());
}

bool in_support(const std::vector<AttrId>& support, AttrId f) {
    return std::binary_search(support.begin(), support.end(), f);
}

double surprise(const AttributedGraph& g, NodeId i, NodeId j) {
    return 1.0 - g.expected_edge_probability(i, j, /*clamped=*/true);
}

// Walk the union of two sorted attribute rows.
template <typename OnCommon, typename OnLeft, typename OnRight>
void merge_rows(std::span<const AttrEntry> a, std::span<const AttrEntry> b, OnCommon on_common,
                OnLeft on_left, OnRight on_right) {
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia].attr == b[ib].attr) {
            on_common(a[ia], b[ib]);
            ++ia;
            ++ib;
        } else if (a[ia].attr < b[ib].attr) {
            on_left(a[ia]);
            ++ia;
        } else {
            on_right(b[ib]);
            ++ib;
        }
    }
    for (; ia < a.size(); ++ia) on_left(a[ia]);
    for (; ib < b.size(); ++ib) on_right(b[ib]);
}

// Pairwise similarity under a dense weight vector, for the direct-summation
// scoring path. For delta kinds the comparison is restricted to the support;
// w_support is the total weight mass sitting on supported attributes.
double pair_similarity(const AttributedGraph& g, NodeId i, NodeId j, std::span<const double> w,
                       SimilarityKind sim, bool external, const std::vector<AttrId>& support,
                       double w_support) {
    const bool use_delta = sim == SimilarityKind::delta ||
                           (sim == SimilarityKind::binary_mixed && external);
    if (!use_delta) {
        double s = 0.0;
        merge_rows(
            g.attributes(i), g.attributes(j),
            [&](const AttrEntry& a, const AttrEntry& b) { s += w[a.attr] * a.value * b.value; },
            [](const AttrEntry&) {}, [](const AttrEntry&) {});
        return s;
    }
    const bool presence_only = sim == SimilarityKind::binary_mixed;
    double disagreement = 0.0;
    auto one_sided = [&](const AttrEntry& e) {
        if (in_support(support, e.attr)) disagreement += w[e.attr];
    };
    merge_rows(
        g.attributes(i), g.attributes(j),
        [&](const AttrEntry& a, const AttrEntry& b) {
            if (!presence_only && a.value != b.value && in_support(support, a.attr))
                disagreement += w[a.attr];
        },
        one_sided, one_sided);
    return w_support - disagreement;
}

} // namespace

RelevanceVector relevance_vector(const AttributedGraph& g, const Neighborhood& nbhd,
                                 SimilarityKind sim, const RelevanceOptions& opt) {
    require_valid(g, nbhd, sim);

    RelevanceVector rv;
    rv.attrs = support_of(g, nbhd.members);
    rv.attribute_count = g.attribute_count();
    rv.member_count = nbhd.members.size();
    const std::size_t s = rv.attrs.size();
    const double two_m = g.two_m();
    const double csize = static_cast<double>(nbhd.members.size());

    double total_degree = 0.0, total_degree_sq = 0.0;
    for (NodeId i : nbhd.members) {
        const double k = g.degree(i);
        total_degree += k;
        total_degree_sq += k * k;
    }
    rv.i_max = csize * csize;
    rv.i_min = opt.include_diagonal_pairs
                   ? -(total_degree * total_degree) / two_m
                   : -(total_degree * total_degree - total_degree_sq) / two_m;

    rv.x_internal.assign(s, 0.0);
    rv.x_external.assign(s, 0.0);
    rv.x_volume.assign(s, 0.0);

    const bool delta_internal = sim == SimilarityKind::delta;
    const bool delta_external = sim != SimilarityKind::dot;

    // Internal adjacency and volume terms, per ordered pair (each undirected
    // edge twice).
    if (!delta_internal) {
        for (const auto& [i, j] : nbhd.internal_edges) {
            const double omega = surprise(g, i, j);
            merge_rows(
                g.attributes(i), g.attributes(j),
                [&](const AttrEntry& a, const AttrEntry& b) {
                    const std::size_t at = support_index(rv.attrs, a.attr);
                    const double prod = a.value * b.value;
                    rv.x_internal[at] += 2.0 * prod;
                    rv.x_volume[at] += 2.0 * omega * prod;
                },
                [](const AttrEntry&) {}, [](const AttrEntry&) {});
        }
        // Null-model part factors through t(f) = sum_i k_i x_i(f).
        std::vector<double> t(s, 0.0), tsq(s, 0.0);
        for (NodeId i : nbhd.members) {
            const double k = g.degree(i);
            for (const auto& e : g.attributes(i)) {
                const std::size_t at = support_index(rv.attrs, e.attr);
                t[at] += k * e.value;
                tsq[at] += k * k * e.value * e.value;
            }
        }
        for (std::size_t at = 0; at < s; ++at) {
            double null_sum = t[at] * t[at];
            if (!opt.include_diagonal_pairs) null_sum -= tsq[at];
            rv.x_internal[at] -= null_sum / two_m;
        }
    } else {
        // Kronecker agreement: start from the all-agree baseline and subtract
        // per-attribute disagreement corrections.
        double edge_base = 0.0, volume_base = 0.0;
        std::vector<double> edge_dis(s, 0.0), volume_dis(s, 0.0);
        for (const auto& [i, j] : nbhd.internal_edges) {
            const double omega = surprise(g, i, j);
            edge_base += 2.0;
            volume_base += 2.0 * omega;
            auto disagree = [&](const AttrEntry& e) {
                const std::size_t at = support_index(rv.attrs, e.attr);
                edge_dis[at] += 2.0;
                volume_dis[at] += 2.0 * omega;
            };
            merge_rows(
                g.attributes(i), g.attributes(j),
                [&](const AttrEntry& a, const AttrEntry& b) {
                    if (a.value != b.value) disagree(a);
                },
                disagree, disagree);
        }
        // Null-model part: group member degrees by explicit value, plus the
        // implicit absent-as-0 group.
        std::vector<std::tuple<AttrId, double, double>> cells; // (attr, value, degree)
        for (NodeId i : nbhd.members)
            for (const auto& e : g.attributes(i))
                cells.emplace_back(e.attr, e.value, static_cast<double>(g.degree(i)));
        std::sort(cells.begin(), cells.end());

        std::vector<double> null_sum(s, 0.0);
        std::size_t c = 0;
        while (c < cells.size()) {
            const AttrId f = std::get<0>(cells[c]);
            double explicit_total = 0.0, group_sq = 0.0;
            while (c < cells.size() && std::get<0>(cells[c]) == f) {
                const double v = std::get<1>(cells[c]);
                double group = 0.0;
                while (c < cells.size() && std::get<0>(cells[c]) == f &&
                       std::get<1>(cells[c]) == v) {
                    group += std::get<2>(cells[c]);
                    ++c;
                }
                group_sq += group * group;
                explicit_total += group;
            }
            const double absent = total_degree - explicit_total;
            null_sum[support_index(rv.attrs, f)] = group_sq + absent * absent;
        }
        for (std::size_t at = 0; at < s; ++at) {
            double null_part = null_sum[at];
            if (!opt.include_diagonal_pairs) {
                // delta(i,i) = 1 for every supported attribute
                null_part -= total_degree_sq;
            }
            rv.x_internal[at] = edge_base - edge_dis[at] - null_part / two_m;
            rv.x_volume[at] = volume_base - volume_dis[at];
        }
    }

    // Boundary penalty, one term per cross edge.
    if (!delta_external) {
        for (const auto& [i, b] : nbhd.cross_edges) {
            const double omega = surprise(g, i, b);
            if (omega == 0.0) continue;
            merge_rows(
                g.attributes(i), g.attributes(b),
                [&](const AttrEntry& a, const AttrEntry& bb) {
                    rv.x_external[support_index(rv.attrs, a.attr)] -= omega * a.value * bb.value;
                },
                [](const AttrEntry&) {}, [](const AttrEntry&) {});
        }
    } else {
        const bool presence_only = sim == SimilarityKind::binary_mixed;
        double penalty_base = 0.0;
        std::vector<double> penalty_dis(s, 0.0);
        for (const auto& [i, b] : nbhd.cross_edges) {
            const double omega = surprise(g, i, b);
            penalty_base += omega;
            if (omega == 0.0) continue;
            auto one_sided = [&](const AttrEntry& e) {
                if (in_support(rv.attrs, e.attr))
                    penalty_dis[support_index(rv.attrs, e.attr)] += omega;
            };
            merge_rows(
                g.attributes(i), g.attributes(b),
                [&](const AttrEntry& a, const AttrEntry& bb) {
                    if (!presence_only && a.value != bb.value) one_sided(a);
                },
                one_sided, one_sided);
        }
        for (std::size_t at = 0; at < s; ++at)
            rv.x_external[at] = -(penalty_base - penalty_dis[at]);
    }

    // Size-invariant components.
    rv.x_internal_hat.resize(s);
    rv.x_external_hat.resize(s);
    rv.x.resize(s);
    const double internal_range = rv.i_max - rv.i_min;
    for (std::size_t at = 0; at < s; ++at) {
        rv.x_internal_hat[at] = (rv.x_internal[at] - rv.i_min) / internal_range;
        const double denom = rv.x_volume[at] - rv.x_external[at];
        rv.x_external_hat[at] = denom == 0.0 ? 0.0 : rv.x_external[at] / denom;
        rv.x[at] = rv.x_internal_hat[at] + rv.x_external_hat[at];
    }
    return rv;
}

namespace {

void require_weights(std::span<const double> w, std::size_t d) {
    if (w.size() != d)
        throw InputError("weight vector dimension " + std::to_string(w.size()) +
                         " != attribute count " + std::to_string(d));
    for (double v : w)
        if (v < 0.0) throw InputError("weights must be nonnegative");
}

double support_weight(const std::vector<AttrId>& support, std::span<const double> w) {
    double total = 0.0;
    for (AttrId f : support) total += w[f];
    return total;
}

} // namespace

double internal_consistency(const AttributedGraph& g, const Neighborhood& nbhd,
                            std::span<const double> w, SimilarityKind sim,
                            const RelevanceOptions& opt) {
    require_valid(g, nbhd, sim);
    require_weights(w, g.attribute_count());
    const auto support = support_of(g, nbhd.members);
    const double w_support = support_weight(support, w);
    const double two_m = g.two_m();

    double acc = 0.0;
    for (NodeId i : nbhd.members) {
        for (NodeId j : nbhd.members) {
            if (i == j && !opt.include_diagonal_pairs) continue;
            const double a_ij = (i != j && g.has_edge(i, j)) ? 1.0 : 0.0;
            const double coeff =
                a_ij - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
            acc += coeff * pair_similarity(g, i, j, w, sim, /*external=*/false, support, w_support);
        }
    }
    return acc;
}

double external_separability(const AttributedGraph& g, const Neighborhood& nbhd,
                             std::span<const double> w, SimilarityKind sim) {
    require_valid(g, nbhd, sim);
    require_weights(w, g.attribute_count());
    const auto support = support_of(g, nbhd.members);
    const double w_support = support_weight(support, w);

    double acc = 0.0;
    for (const auto& [i, b] : nbhd.cross_edges) {
        const double omega = surprise(g, i, b);
        if (omega == 0.0) continue;
        acc -= omega * pair_similarity(g, i, b, w, sim, /*external=*/true, support, w_support);
    }
    return acc;
}

double normality(const AttributedGraph& g, const Neighborhood& nbhd, std::span<const double> w,
                 SimilarityKind sim, const RelevanceOptions& opt) {
    return internal_consistency(g, nbhd, w, sim, opt) + external_separability(g, nbhd, w, sim);
}

double normalized_normality(const RelevanceVector& rv,
                            std::span<const std::pair<AttrId, double>> w) {
    double acc = 0.0;
    for (const auto& [f, weight] : w) {
        if (weight < 0.0) throw InputError("weights must be nonnegative");
        acc += weight * rv.x_at(f);
    }
    return acc;
}

} // namespace amen
