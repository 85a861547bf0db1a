#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amen/focus.hpp"
#include "amen/graph.hpp"
#include "amen/rng.hpp"

namespace amen {

enum class PerturbMode { structure, attribute, both };

const char* to_string(PerturbMode m);
std::optional<PerturbMode> mode_from_string(std::string_view s);

enum class Method { amen_l1, amen_l2, avg_degree, cut_ratio, conductance, flake_odf, aw_ncut };

const char* to_string(Method m);
std::optional<Method> method_from_string(std::string_view s);

/// Whether a lower raw score means "more anomalous" for the method.
bool lower_is_anomalous(Method m);

struct PerturbationConfig {
    PerturbMode mode = PerturbMode::both;
    std::vector<double> intensities = {0.05, 0.10, 0.15, 0.20, 0.25,
                                       0.30, 0.35, 0.40, 0.45, 0.50};
    double anomaly_fraction = 0.05;
    std::size_t size_min = 30;
    std::size_t size_max = 100;
    std::uint64_t seed = 1;
    SimilarityKind similarity = SimilarityKind::binary_mixed;
    unsigned jobs = 1;
};

struct EvalRow {
    Method method;
    PerturbMode mode;
    double intensity;
    double average_precision;
};

struct EvalReport {
    PerturbationConfig config;
    std::vector<std::string> eligible_ids;
    std::vector<std::string> target_ids; // the planted anomalies
    std::vector<EvalRow> rows;
    std::vector<std::pair<Method, double>> method_seconds;
};

/// Filter neighborhoods by the eligible size range and draw the anomaly
/// targets, ceil(fraction * eligible) of them, without replacement.
/// Returns (eligible indices, target indices into `neighborhoods`).
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> select_targets(
    const std::vector<NamedNeighborhood>& neighborhoods, const PerturbationConfig& config,
    Rng& rng);

/// Rewire each internal edge of the neighborhood independently with
/// probability p: one uniformly chosen endpoint is kept, the other is
/// replaced by a uniform node outside C (duplicates and self-loops are
/// resampled, with bounded retries). Degrees and m are those of the
/// returned graph.
AttributedGraph perturb_structure(const AttributedGraph& g, const Neighborhood& nbhd, double p,
                                  Rng& rng);

/// Replace each member's entire attribute row, independently with
/// probability q, by a copy of a uniformly sampled outside node's row.
/// Outside rows are untouched.
AttributedGraph perturb_attributes(const AttributedGraph& g, const Neighborhood& nbhd, double q,
                                   Rng& rng);

/// Mean precision at the ranks of the positive items, after sorting by
/// anomalousness with deterministic index tie-breaks.
double average_precision(std::span<const double> scores, std::span<const char> anomaly_labels,
                         bool lower_is_anomalous);

/// Run the full perturbation protocol: per intensity, perturb the targets in
/// one fresh copy of the graph, re-score every eligible neighborhood with
/// every method, and record average precision with the targets as positives.
/// Deterministic in (graph, config); intensities may run in parallel.
EvalReport run_experiment(const AttributedGraph& g,
                          const std::vector<NamedNeighborhood>& neighborhoods,
                          const PerturbationConfig& config, const std::vector<Method>& methods);

// --- distribution analyses ---------------------------------------------

struct DistributionTables {
    /// cdf of the count of positive x entries per neighborhood
    std::vector<std::pair<double, double>> positive_count_cdf;
    /// ccdf of the fraction of members exhibiting the L1-selected attribute
    std::vector<std::pair<double, double>> l1_agreement_ccdf;
    /// ccdf of the normality score, one series per norm
    std::vector<std::pair<double, double>> normality_l1_ccdf;
    std::vector<std::pair<double, double>> normality_l2_ccdf;
    /// mean x value of the k-th most positive attribute
    std::vector<std::pair<std::size_t, double>> kth_positive_mean;
};

DistributionTables analyze_distributions(const AttributedGraph& g,
                                         const std::vector<NamedNeighborhood>& neighborhoods,
                                         SimilarityKind sim);

} // namespace amen
