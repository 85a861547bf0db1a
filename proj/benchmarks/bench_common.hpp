#pragma once

#include <string>
#include <vector>

#include "amen/graph.hpp"
#include "amen/rng.hpp"

namespace amen::bench {

/// Random community-of-interest graph: a dense block of `community` nodes in
/// front, sparse background behind, `nnz` attribute entries per node drawn
/// from `pool` distinct attributes.
inline AttributedGraph block_graph(std::size_t n, std::size_t community, double block_p,
                                   std::size_t nnz, std::size_t pool, std::uint64_t seed) {
    Rng rng(seed);
    GraphBuilder b;
    for (std::size_t v = 0; v < n; ++v) b.add_node("v" + std::to_string(v));
    std::vector<AttrId> attrs;
    attrs.reserve(pool);
    for (std::size_t f = 0; f < pool; ++f)
        attrs.push_back(b.intern_attribute("a" + std::to_string(f)));
    for (std::size_t i = 0; i < community; ++i)
        for (std::size_t j = i + 1; j < community; ++j)
            if (rng.bernoulli(block_p)) b.add_edge(NodeId(i), NodeId(j));
    for (std::size_t v = 0; v + 1 < n; ++v) b.add_edge(NodeId(v), NodeId(v + 1));
    for (std::size_t e = 0; e < 2 * n; ++e) {
        const auto u = NodeId(rng.below(n));
        const auto v = NodeId(rng.below(n));
        if (u != v) b.add_edge(u, v);
    }
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t t = 0; t < nnz; ++t)
            b.set_attribute(NodeId(v), attrs[rng.below(pool)], 1.0);
    return b.build(false);
}

inline std::vector<NodeId> first_nodes(std::size_t count) {
    std::vector<NodeId> out(count);
    for (std::size_t v = 0; v < count; ++v) out[v] = NodeId(v);
    return out;
}

} // namespace amen::bench
