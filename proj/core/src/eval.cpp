#include "amen/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "amen/baselines.hpp"
#include "amen/parallel.hpp"

namespace amen {

const char* to_string(PerturbMode m) {
    switch (m) {
        case PerturbMode::structure: return "structure";
        case PerturbMode::attribute: return "attribute";
        case PerturbMode::both: return "both";
    }
    return "?";
}

std::optional<PerturbMode> mode_from_string(std::string_view s) {
    if (s == "structure") return PerturbMode::structure;
    if (s == "attribute") return PerturbMode::attribute;
    if (s == "both") return PerturbMode::both;
    return std::nullopt;
}

const char* to_string(Method m) {
    switch (m) {
        case Method::amen_l1: return "amen_l1";
        case Method::amen_l2: return "amen_l2";
        case Method::avg_degree: return "avg_degree";
        case Method::cut_ratio: return "cut_ratio";
        case Method::conductance: return "conductance";
        case Method::flake_odf: return "flake_odf";
        case Method::aw_ncut: return "aw_ncut";
    }
    return "?";
}

std::optional<Method> method_from_string(std::string_view s) {
    for (Method m : {Method::amen_l1, Method::amen_l2, Method::avg_degree, Method::cut_ratio,
                     Method::conductance, Method::flake_odf, Method::aw_ncut})
        if (s == to_string(m)) return m;
    return std::nullopt;
}

bool lower_is_anomalous(Method m) {
    // Internal-quality measures drop for anomalies; boundary measures rise.
    switch (m) {
        case Method::amen_l1:
        case Method::amen_l2:
        case Method::avg_degree: return true;
        case Method::cut_ratio:
        case Method::conductance:
        case Method::flake_odf:
        case Method::aw_ncut: return false;
    }
    return true;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_targets(
    const std::vector<NamedNeighborhood>& neighborhoods, const PerturbationConfig& config,
    Rng& rng) {
    std::vector<std::size_t> eligible;
    for (std::size_t i = 0; i < neighborhoods.size(); ++i) {
        const std::size_t size = neighborhoods[i].members.size();
        if (size >= config.size_min && size <= config.size_max) eligible.push_back(i);
    }
    if (eligible.empty())
        throw InputError("no neighborhood falls in the eligible size range");

    const auto want = static_cast<std::size_t>(
        std::ceil(config.anomaly_fraction * static_cast<double>(eligible.size())));
    std::vector<std::size_t> pool = eligible;
    std::vector<std::size_t> targets;
    for (std::size_t t = 0; t < want && !pool.empty(); ++t) {
        const std::size_t pick = static_cast<std::size_t>(rng.below(pool.size()));
        targets.push_back(pool[pick]);
        pool[pick] = pool.back();
        pool.pop_back();
    }
    std::sort(targets.begin(), targets.end());
    return {std::move(eligible), std::move(targets)};
}

namespace {

// Rebuild a graph with the same node/attribute universe from edited edge and
// row data. Dense ids are preserved because labels are re-interned in order.
struct EditableGraph {
    explicit EditableGraph(const AttributedGraph& g) : source(&g) {
        edges.reserve(g.edge_count());
        for (NodeId i = 0; i < g.node_count(); ++i)
            for (NodeId j : g.neighbors(i))
                if (i < j) edges.emplace_back(i, j);
        edge_set.reserve(edges.size() * 2);
        for (const auto& [a, b] : edges) edge_set.insert(key(a, b));
        rows.resize(g.node_count());
    }

    static std::uint64_t key(NodeId a, NodeId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    bool has(NodeId a, NodeId b) const { return edge_set.count(key(a, b)) > 0; }

    void replace_edge(std::size_t idx, NodeId a, NodeId b) {
        edge_set.erase(key(edges[idx].first, edges[idx].second));
        edges[idx] = {a, b};
        edge_set.insert(key(a, b));
    }

    void set_row(NodeId v, std::vector<AttrEntry> row) { rows[v] = std::move(row); }

    AttributedGraph build() const {
        GraphBuilder b;
        for (NodeId v = 0; v < source->node_count(); ++v) b.add_node(source->node_label(v));
        for (AttrId f = 0; f < source->attribute_count(); ++f)
            b.intern_attribute(source->attribute_name(f));
        for (const auto& [u, v] : edges) b.add_edge(u, v);
        for (NodeId v = 0; v < source->node_count(); ++v) {
            if (rows[v]) {
                for (const auto& e : *rows[v]) b.set_attribute(v, e.attr, e.value);
            } else {
                for (const auto& e : source->attributes(v)) b.set_attribute(v, e.attr, e.value);
            }
        }
        return b.build(/*rescale=*/false);
    }

    const AttributedGraph* source;
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_set<std::uint64_t> edge_set;
    std::vector<std::optional<std::vector<AttrEntry>>> rows;
};

std::vector<NodeId> outside_nodes(const AttributedGraph& g, const Neighborhood& nbhd) {
    std::vector<NodeId> out;
    out.reserve(g.node_count() - nbhd.members.size());
    for (NodeId v = 0; v < g.node_count(); ++v)
        if (!nbhd.contains(v)) out.push_back(v);
    return out;
}

} // namespace

AttributedGraph perturb_structure(const AttributedGraph& g, const Neighborhood& nbhd, double p,
                                  Rng& rng) {
    if (p < 0.0 || p > 1.0) throw InputError("rewiring probability must be in [0,1]");
    const auto outside = outside_nodes(g, nbhd);
    if (outside.empty()) throw InputError("no outside nodes to rewire to");

    EditableGraph edit(g);
    // indexes of the neighborhood's internal edges in the edit list
    std::unordered_map<std::uint64_t, std::size_t> at;
    at.reserve(edit.edges.size() * 2);
    for (std::size_t idx = 0; idx < edit.edges.size(); ++idx)
        at.emplace(EditableGraph::key(edit.edges[idx].first, edit.edges[idx].second), idx);

    constexpr int kMaxRetries = 64;
    for (const auto& [i, j] : nbhd.internal_edges) {
        if (!rng.bernoulli(p)) continue;
        const NodeId kept = rng.below(2) == 0 ? i : j;
        const std::size_t idx = at.at(EditableGraph::key(i, j));
        for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
            const NodeId candidate = outside[rng.below(outside.size())];
            if (candidate == kept || edit.has(kept, candidate)) continue;
            edit.replace_edge(idx, kept, candidate);
            break;
            // on exhausted retries the original edge stays
        }
    }
    return edit.build();
}

AttributedGraph perturb_attributes(const AttributedGraph& g, const Neighborhood& nbhd, double q,
                                   Rng& rng) {
    if (q < 0.0 || q > 1.0) throw InputError("inheritance probability must be in [0,1]");
    const auto outside = outside_nodes(g, nbhd);
    if (outside.empty()) throw InputError("no outside nodes to inherit attributes from");

    EditableGraph edit(g);
    for (NodeId member : nbhd.members) {
        if (!rng.bernoulli(q)) continue;
        const NodeId donor = outside[rng.below(outside.size())];
        auto row = g.attributes(donor);
        edit.set_row(member, std::vector<AttrEntry>(row.begin(), row.end()));
    }
    return edit.build();
}

double average_precision(std::span<const double> scores, std::span<const char> anomaly_labels,
                         bool lower_anomalous) {
    if (scores.size() != anomaly_labels.size())
        throw InputError("scores and labels must have equal length");
    std::size_t positives = 0;
    for (char l : anomaly_labels) positives += l != 0;
    if (positives == 0) throw InputError("average precision needs at least one positive label");

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double sa = lower_anomalous ? scores[a] : -scores[a];
        const double sb = lower_anomalous ? scores[b] : -scores[b];
        if (sa != sb) return sa < sb;
        return a < b;
    });

    double sum = 0.0;
    std::size_t hits = 0;
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        if (anomaly_labels[order[rank]]) {
            ++hits;
            sum += static_cast<double>(hits) / static_cast<double>(rank + 1);
        }
    }
    return sum / static_cast<double>(positives);
}

namespace {

struct CellScores {
    std::vector<std::vector<double>> per_method; // [method][eligible index]
    std::vector<double> seconds;                 // [method]
};

CellScores score_cell(const AttributedGraph& g,
                      const std::vector<NamedNeighborhood>& neighborhoods,
                      const std::vector<std::size_t>& eligible,
                      const std::vector<Method>& methods, SimilarityKind sim) {
    using clock = std::chrono::steady_clock;
    CellScores out;
    out.per_method.assign(methods.size(), std::vector<double>(eligible.size(), 0.0));
    out.seconds.assign(methods.size(), 0.0);

    const bool needs_relevance =
        std::any_of(methods.begin(), methods.end(),
                    [](Method m) { return m == Method::amen_l1 || m == Method::amen_l2; });
    const bool needs_aw = std::count(methods.begin(), methods.end(), Method::aw_ncut) > 0;
    const double aw_total = needs_aw ? total_weighted_volume(g, sim) : 0.0;

    for (std::size_t e = 0; e < eligible.size(); ++e) {
        const Neighborhood nb = boundary_of(g, neighborhoods[eligible[e]].members);
        RelevanceVector rv;
        if (needs_relevance) rv = relevance_vector(g, nb, sim);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            const auto t0 = clock::now();
            double score = 0.0;
            switch (methods[m]) {
                case Method::amen_l1: score = focus_l1(rv).score; break;
                case Method::amen_l2: score = focus_l2(rv).score; break;
                case Method::avg_degree: score = average_degree(nb); break;
                case Method::cut_ratio: score = cut_ratio(g, nb); break;
                case Method::conductance: score = conductance(g, nb); break;
                case Method::flake_odf: score = flake_odf(g, nb); break;
                case Method::aw_ncut: score = aw_ncut_uniform(g, nb, sim, aw_total); break;
            }
            out.per_method[m][e] = score;
            out.seconds[m] += std::chrono::duration<double>(clock::now() - t0).count();
        }
    }
    return out;
}

} // namespace

EvalReport run_experiment(const AttributedGraph& g,
                          const std::vector<NamedNeighborhood>& neighborhoods,
                          const PerturbationConfig& config, const std::vector<Method>& methods) {
    if (methods.empty()) throw InputError("no methods selected");
    for (double v : config.intensities)
        if (v < 0.0 || v > 1.0) throw InputError("perturbation intensity must be in [0,1]");

    EvalReport report;
    report.config = config;

    Rng selection_rng(mix_seed(config.seed, 0x5e1ec7));
    auto [eligible, targets] = select_targets(neighborhoods, config, selection_rng);
    for (std::size_t i : eligible) report.eligible_ids.push_back(neighborhoods[i].id);
    for (std::size_t i : targets) report.target_ids.push_back(neighborhoods[i].id);

    std::vector<char> labels(eligible.size(), 0);
    for (std::size_t e = 0; e < eligible.size(); ++e)
        labels[e] = std::binary_search(targets.begin(), targets.end(), eligible[e]) ? 1 : 0;

    const std::size_t cells = config.intensities.size();
    std::vector<CellScores> results(cells);

    parallel_for(cells, config.jobs, [&](std::size_t cell) {
        const double intensity = config.intensities[cell];
        Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(config.mode), cell));

        // All targets perturbed within one shared copy per intensity; each
        // intensity restarts from the original graph.
        AttributedGraph current = g;
        for (std::size_t t : targets) {
            if (config.mode == PerturbMode::structure || config.mode == PerturbMode::both) {
                const Neighborhood nb = boundary_of(current, neighborhoods[t].members);
                current = perturb_structure(current, nb, intensity, rng);
            }
            if (config.mode == PerturbMode::attribute || config.mode == PerturbMode::both) {
                const Neighborhood nb = boundary_of(current, neighborhoods[t].members);
                current = perturb_attributes(current, nb, intensity, rng);
            }
        }
        results[cell] = score_cell(current, neighborhoods, eligible, methods, config.similarity);
    });

    std::vector<double> seconds(methods.size(), 0.0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        for (std::size_t m = 0; m < methods.size(); ++m) {
            report.rows.push_back({methods[m], config.mode, config.intensities[cell],
                                   average_precision(results[cell].per_method[m], labels,
                                                     lower_is_anomalous(methods[m]))});
            seconds[m] += results[cell].seconds[m];
        }
    }
    for (std::size_t m = 0; m < methods.size(); ++m)
        report.method_seconds.emplace_back(methods[m], seconds[m]);
    return report;
}

namespace {

std::vector<std::pair<double, double>> cdf_of(std::vector<double> values) {
    std::vector<std::pair<double, double>> out;
    if (values.empty()) return out;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        out.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

std::vector<std::pair<double, double>> ccdf_of(std::vector<double> values) {
    std::vector<std::pair<double, double>> out;
    if (values.empty()) return out;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && values[i] == values[i - 1]) continue;
        out.emplace_back(values[i], static_cast<double>(values.size() - i) / n);
    }
    return out;
}

} // namespace

DistributionTables analyze_distributions(const AttributedGraph& g,
                                         const std::vector<NamedNeighborhood>& neighborhoods,
                                         SimilarityKind sim) {
    DistributionTables tables;
    std::vector<double> positive_counts, agreements, l1_scores, l2_scores;
    std::vector<std::vector<double>> positive_sorted; // per neighborhood, descending

    for (const auto& named : neighborhoods) {
        RelevanceVector rv;
        Neighborhood nb;
        try {
            nb = boundary_of(g, named.members);
            rv = relevance_vector(g, nb, sim);
        } catch (const Error&) {
            continue; // skip unscorable neighborhoods
        }
        std::vector<double> positives;
        for (double v : rv.x)
            if (v > 0.0) positives.push_back(v);
        std::sort(positives.begin(), positives.end(), std::greater<>());
        positive_counts.push_back(static_cast<double>(positives.size()));

        const FocusResult l1 = focus_l1(rv);
        const FocusResult l2 = focus_l2(rv);
        l1_scores.push_back(l1.score);
        l2_scores.push_back(l2.score);

        double agreeing = 0.0;
        if (!l1.no_focus) {
            const AttrId chosen = l1.weights.front().first;
            for (NodeId i : nb.members) {
                for (const auto& e : g.attributes(i)) {
                    if (e.attr == chosen) {
                        agreeing += 1.0;
                        break;
                    }
                }
            }
            agreeing /= static_cast<double>(nb.members.size());
        }
        agreements.push_back(agreeing);
        positive_sorted.push_back(std::move(positives));
    }

    tables.positive_count_cdf = cdf_of(std::move(positive_counts));
    tables.l1_agreement_ccdf = ccdf_of(std::move(agreements));
    tables.normality_l1_ccdf = ccdf_of(std::move(l1_scores));
    tables.normality_l2_ccdf = ccdf_of(std::move(l2_scores));

    std::size_t max_k = 0;
    for (const auto& p : positive_sorted) max_k = std::max(max_k, p.size());
    for (std::size_t k = 1; k <= max_k; ++k) {
        double sum = 0.0;
        std::size_t count = 0;
        for (const auto& p : positive_sorted) {
            if (p.size() >= k) {
                sum += p[k - 1];
                ++count;
            }
        }
        tables.kth_positive_mean.emplace_back(k, sum / static_cast<double>(count));
    }
    return tables;
}

} // namespace amen
