#pragma once

#include <cstdint>
#include <vector>

#include "amen/graph.hpp"

namespace amen {

/// Planted-community generator used when no real circles are available.
/// Communities are disjoint node blocks with dense internal wiring and a
/// small set of exclusive focus attributes; background attributes and a
/// focus leak probability keep the task from being trivially separable.
struct SyntheticConfig {
    std::size_t communities = 100;
    std::size_t size_min = 30;
    std::size_t size_max = 100;
    double intra_edge_probability = 0.20;
    double intra_jitter = 0.6; // per-community intra probability varies +-60%
    double inter_edge_probability = 0.0015;
    std::size_t focus_attrs_min = 3;
    std::size_t focus_attrs_max = 5;
    double focus_noise = 0.1; // member lacks a focus attribute with this probability
    double focus_leak = 0.03; // outsider exhibits a foreign focus attribute
    std::size_t background_attrs = 60;
    double background_probability = 0.08;
    std::uint64_t seed = 1;
};

struct SyntheticGraph {
    AttributedGraph graph;
    std::vector<NamedNeighborhood> communities;
};

SyntheticGraph generate_planted(const SyntheticConfig& cfg);

} // namespace amen
