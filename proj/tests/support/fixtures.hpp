#pragma once

// Shared hand-built graphs and random generators for tests.

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "amen/graph.hpp"
#include "amen/rng.hpp"

namespace amen::test {

/// 4-node path-with-triangle: edges 0-1, 0-2, 1-2, 2-3. One attribute a0 = 1
/// on every node. Degrees [2,2,3,1], m = 4.
inline AttributedGraph make_g4() {
    GraphBuilder b;
    for (int v = 0; v < 4; ++v) b.add_node(std::to_string(v));
    const AttrId a0 = b.intern_attribute("a0");
    b.add_edge(0, 1);
    b.add_edge(0, 2);
    b.add_edge(1, 2);
    b.add_edge(2, 3);
    for (NodeId v = 0; v < 4; ++v) b.set_attribute(v, a0, 1.0);
    return b.build(/*rescale=*/false);
}

/// Same structure, two binary attributes: a0 = [1,1,1,0], a1 = [1,1,1,1].
inline AttributedGraph make_g4b() {
    GraphBuilder b;
    for (int v = 0; v < 4; ++v) b.add_node(std::to_string(v));
    const AttrId a0 = b.intern_attribute("a0");
    const AttrId a1 = b.intern_attribute("a1");
    b.add_edge(0, 1);
    b.add_edge(0, 2);
    b.add_edge(1, 2);
    b.add_edge(2, 3);
    for (NodeId v = 0; v < 3; ++v) b.set_attribute(v, a0, 1.0);
    for (NodeId v = 0; v < 4; ++v) b.set_attribute(v, a1, 1.0);
    return b.build(/*rescale=*/false);
}

struct RandomGraphConfig {
    std::size_t max_nodes = 40;
    std::size_t max_attrs = 8;
    double edge_probability = 0.25;
    double attr_probability = 0.4;
    bool binary_values = false; // otherwise values on the 1/16 grid
    std::size_t min_nodes = 4;
};

/// Random simple graph with grid-valued sparse attributes. Attribute values
/// are multiples of 1/16 so reference and production sums agree exactly.
inline AttributedGraph random_graph(Rng& rng, const RandomGraphConfig& cfg = {}) {
    const std::size_t n = cfg.min_nodes + rng.below(cfg.max_nodes - cfg.min_nodes + 1);
    const std::size_t d = 1 + rng.below(cfg.max_attrs);
    GraphBuilder b;
    for (std::size_t v = 0; v < n; ++v) b.add_node("v" + std::to_string(v));
    std::vector<AttrId> attrs;
    for (std::size_t f = 0; f < d; ++f) attrs.push_back(b.intern_attribute("a" + std::to_string(f)));
    bool any_edge = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (rng.bernoulli(cfg.edge_probability)) {
                b.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(j));
                any_edge = true;
            }
        }
    }
    if (!any_edge) b.add_edge(0, 1);
    for (std::size_t v = 0; v < n; ++v) {
        for (AttrId f : attrs) {
            if (!rng.bernoulli(cfg.attr_probability)) continue;
            const double value =
                cfg.binary_values ? 1.0 : static_cast<double>(1 + rng.below(16)) / 16.0;
            b.set_attribute(static_cast<NodeId>(v), f, value);
        }
    }
    return b.build(/*rescale=*/false);
}

/// Uniform random member set of the requested size.
inline std::vector<NodeId> random_members(Rng& rng, std::size_t n, std::size_t size) {
    std::vector<NodeId> pool(n);
    for (std::size_t v = 0; v < n; ++v) pool[v] = static_cast<NodeId>(v);
    std::vector<NodeId> out;
    for (std::size_t t = 0; t < size; ++t) {
        const std::size_t pick = rng.below(pool.size());
        out.push_back(pool[pick]);
        pool[pick] = pool.back();
        pool.pop_back();
    }
    return out;
}

/// Scratch directory under the build tree, cleaned and recreated per call.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("amen_tests_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path);
    out << contents;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace amen::test
