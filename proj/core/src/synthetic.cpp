#include "amen/synthetic.hpp"

#include <cmath>
#include <string>

#include "amen/rng.hpp"

namespace amen {

namespace {

// Visit each index of [0, total) independently with probability p, skipping
// geometrically between hits.
template <typename Fn>
void sample_bernoulli_indices(Rng& rng, std::uint64_t total, double p, Fn&& fn) {
    if (p <= 0.0 || total == 0) return;
    if (p >= 1.0) {
        for (std::uint64_t i = 0; i < total; ++i) fn(i);
        return;
    }
    const double log1mp = std::log1p(-p);
    double idx = -1.0;
    while (true) {
        const double u = 1.0 - rng.uniform01(); // (0, 1]
        idx += 1.0 + std::floor(std::log(u) / log1mp);
        if (idx >= static_cast<double>(total)) return;
        fn(static_cast<std::uint64_t>(idx));
    }
}

} // namespace

SyntheticGraph generate_planted(const SyntheticConfig& cfg) {
    if (cfg.size_min < 2 || cfg.size_max < cfg.size_min)
        throw InputError("invalid community size range");
    Rng rng(cfg.seed);

    std::vector<std::size_t> sizes(cfg.communities);
    std::size_t n = 0;
    for (auto& s : sizes) {
        s = static_cast<std::size_t>(rng.between(cfg.size_min, cfg.size_max));
        n += s;
    }

    GraphBuilder b;
    std::vector<NodeId> ids(n);
    for (std::size_t v = 0; v < n; ++v) ids[v] = b.add_node("n" + std::to_string(v));

    std::vector<std::size_t> start(cfg.communities + 1, 0);
    for (std::size_t c = 0; c < cfg.communities; ++c) start[c + 1] = start[c] + sizes[c];
    std::vector<std::size_t> community_of(n);
    for (std::size_t c = 0; c < cfg.communities; ++c)
        for (std::size_t v = start[c]; v < start[c + 1]; ++v) community_of[v] = c;

    // Intra-community edges; per-community density jitter keeps the
    // unperturbed score distribution from collapsing to a point.
    for (std::size_t c = 0; c < cfg.communities; ++c) {
        const std::uint64_t s = sizes[c];
        const double jitter = 1.0 + cfg.intra_jitter * (2.0 * rng.uniform01() - 1.0);
        const double intra_p =
            std::min(1.0, std::max(0.0, cfg.intra_edge_probability * jitter));
        sample_bernoulli_indices(rng, s * (s - 1) / 2, intra_p,
                                 [&](std::uint64_t pair) {
                                     // unrank pair index into (row, col), row < col
                                     std::uint64_t row = 0;
                                     std::uint64_t remaining = pair;
                                     while (remaining >= s - 1 - row) {
                                         remaining -= s - 1 - row;
                                         ++row;
                                     }
                                     const std::uint64_t col = row + 1 + remaining;
                                     b.add_edge(ids[start[c] + row], ids[start[c] + col]);
                                 });
    }

    // Inter-community edges over the remaining pairs: sample global pairs and
    // keep the ones crossing a community border.
    const std::uint64_t total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    sample_bernoulli_indices(rng, total_pairs, cfg.inter_edge_probability, [&](std::uint64_t pair) {
        std::uint64_t row = 0;
        std::uint64_t remaining = pair;
        // solve row via the triangular cumulative count
        // (linear scan is too slow here, use the closed form)
        const double nf = static_cast<double>(n);
        const double pf = static_cast<double>(pair);
        double rguess = nf - 0.5 - std::sqrt((nf - 0.5) * (nf - 0.5) - 2.0 * pf);
        row = static_cast<std::uint64_t>(std::max(0.0, rguess));
        auto cum = [&](std::uint64_t r) {
            return r * static_cast<std::uint64_t>(n) - r * (r + 1) / 2;
        };
        while (row > 0 && cum(row) > pair) --row;
        while (cum(row + 1) <= pair) ++row;
        remaining = pair - cum(row);
        const std::uint64_t col = row + 1 + remaining;
        if (community_of[row] != community_of[col]) b.add_edge(ids[row], ids[col]);
    });

    // Focus attributes, exclusive per community.
    std::size_t next_attr = 0;
    for (std::size_t c = 0; c < cfg.communities; ++c) {
        const std::size_t count =
            static_cast<std::size_t>(rng.between(cfg.focus_attrs_min, cfg.focus_attrs_max));
        std::vector<AttrId> focus;
        for (std::size_t f = 0; f < count; ++f)
            focus.push_back(b.intern_attribute("f" + std::to_string(next_attr++)));
        for (std::size_t v = 0; v < n; ++v) {
            const bool member = community_of[v] == c;
            for (AttrId f : focus) {
                if (member) {
                    if (!rng.bernoulli(cfg.focus_noise)) b.set_attribute(ids[v], f, 1.0);
                } else if (cfg.focus_leak > 0.0 && rng.bernoulli(cfg.focus_leak)) {
                    b.set_attribute(ids[v], f, 1.0);
                }
            }
        }
    }

    // Background attributes shared by everyone.
    for (std::size_t a = 0; a < cfg.background_attrs; ++a) {
        AttrId f = b.intern_attribute("bg" + std::to_string(a));
        sample_bernoulli_indices(rng, n, cfg.background_probability,
                                 [&](std::uint64_t v) { b.set_attribute(ids[v], f, 1.0); });
    }

    SyntheticGraph out{b.build(/*rescale=*/false), {}};
    out.communities.reserve(cfg.communities);
    for (std::size_t c = 0; c < cfg.communities; ++c) {
        NamedNeighborhood nb;
        nb.id = "c" + std::to_string(c);
        for (std::size_t v = start[c]; v < start[c + 1]; ++v) nb.members.push_back(ids[v]);
        out.communities.push_back(std::move(nb));
    }
    return out;
}

} // namespace amen
