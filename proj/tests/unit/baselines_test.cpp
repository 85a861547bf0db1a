#include <doctest.h>

#include <vector>

#include "amen/baselines.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amen;

TEST_CASE("modularity fixtures") {
    auto g = test::make_g4();
    SUBCASE("whole-graph partition is exactly zero") {
        Partition p{{0, 0, 0, 0}};
        CHECK(modularity(g, p) == 0.0);
    }
    SUBCASE("triangle | leaf split") {
        Partition p{{0, 0, 0, 1}};
        CHECK(modularity(g, p) == doctest::Approx(-0.03125).epsilon(1e-15));
        CHECK(modularity(g, p) == doctest::Approx(oracle::modularity(g, p.community)).epsilon(1e-12));
    }
    SUBCASE("two disjoint triangles are positively modular") {
        GraphBuilder b;
        for (int v = 0; v < 6; ++v) b.add_node(std::to_string(v));
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(0, 2);
        b.add_edge(3, 4);
        b.add_edge(4, 5);
        b.add_edge(3, 5);
        auto tri = b.build();
        CHECK(modularity(tri, Partition{{0, 0, 0, 1, 1, 1}}) > 0.0);
    }
}

TEST_CASE("nominal assortativity") {
    auto g = test::make_g4();
    SUBCASE("single category is zero") {
        CHECK(assortativity_nominal(g, NodeCategory{{0, 0, 0, 0}}) == 0.0);
    }
    SUBCASE("bipartite sides are disassortative") {
        GraphBuilder b;
        for (int v = 0; v < 6; ++v) b.add_node(std::to_string(v));
        for (int l = 0; l < 3; ++l)
            for (int r = 3; r < 6; ++r) b.add_edge(l, r);
        auto bip = b.build();
        CHECK(assortativity_nominal(bip, NodeCategory{{0, 0, 0, 1, 1, 1}}) < 0.0);
    }
    SUBCASE("connected components as categories are assortative") {
        GraphBuilder b;
        for (int v = 0; v < 6; ++v) b.add_node(std::to_string(v));
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(3, 4);
        b.add_edge(4, 5);
        auto two = b.build();
        CHECK(assortativity_nominal(two, NodeCategory{{0, 0, 0, 1, 1, 1}}) > 0.0);
    }
    SUBCASE("coincides with modularity on the same grouping") {
        Rng rng(7);
        auto g2 = test::random_graph(rng, {.max_nodes = 20, .max_attrs = 2});
        std::vector<std::uint32_t> groups(g2.node_count());
        for (auto& c : groups) c = static_cast<std::uint32_t>(rng.below(3));
        CHECK(modularity(g2, Partition{groups}) ==
              assortativity_nominal(g2, NodeCategory{groups}));
    }
}

TEST_CASE("scalar assortativity") {
    SUBCASE("constant attribute is exactly zero") {
        auto g = test::make_g4();
        ScalarAttribute x{{0.5, 0.5, 0.5, 0.5}};
        CHECK(assortativity_scalar(g, x) == 0.0);
    }
    SUBCASE("degree attribute on a star is negative") {
        GraphBuilder b;
        for (int v = 0; v < 5; ++v) b.add_node(std::to_string(v));
        for (int leaf = 1; leaf < 5; ++leaf) b.add_edge(0, leaf);
        auto star = b.build();
        ScalarAttribute x{{4, 1, 1, 1, 1}};
        const double h = assortativity_scalar(star, x);
        CHECK(h < 0.0);
        CHECK(h == doctest::Approx(oracle::assortativity_scalar(star, x.value)).epsilon(1e-12));
        CHECK(h == doctest::Approx(-2.25).epsilon(1e-12));
        CHECK(x.edge_end_mean(star) == doctest::Approx(20.0 / 8.0).epsilon(1e-15));
    }
    SUBCASE("random attribute uncorrelated with structure stays near zero") {
        Rng rng(11);
        GraphBuilder b;
        const int n = 400;
        for (int v = 0; v < n; ++v) b.add_node(std::to_string(v));
        for (int v = 0; v < n; ++v)
            for (int u = v + 1; u < n; ++u)
                if (rng.bernoulli(0.02)) b.add_edge(v, u);
        auto g = b.build();
        ScalarAttribute x{std::vector<double>(n)};
        for (auto& v : x.value) v = rng.uniform01();
        CHECK(std::abs(assortativity_scalar(g, x)) < 0.02);
    }
}

TEST_CASE("neighborhood baselines on the G4 fixture") {
    auto g = test::make_g4();
    auto core = boundary_of(g, std::vector<NodeId>{0, 1, 2});
    CHECK(average_degree(core) == 2.0);
    CHECK(cut_ratio(g, core) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(conductance(g, core) == 1.0);
    CHECK(flake_odf(g, core) == 0.0);
    CHECK(aw_ncut_uniform(g, core, SimilarityKind::dot) ==
          doctest::Approx(8.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("baseline edge cases") {
    auto g = test::make_g4();
    SUBCASE("edgeless member set has zero average degree") {
        auto nb = boundary_of(g, std::vector<NodeId>{0, 3});
        CHECK(average_degree(nb) == 0.0);
    }
    SUBCASE("clique average degree is size - 1") {
        GraphBuilder b;
        for (int v = 0; v < 5; ++v) b.add_node(std::to_string(v));
        for (int i = 0; i < 5; ++i)
            for (int j = i + 1; j < 5; ++j) b.add_edge(i, j);
        auto k5 = b.build();
        auto nb = boundary_of(k5, std::vector<NodeId>{0, 1, 2, 3, 4});
        CHECK(average_degree(nb) == 4.0);
        CHECK(flake_odf(k5, nb) == 0.0);
    }
    SUBCASE("whole-graph member set breaks cut_ratio and conductance") {
        auto nb = boundary_of(g, std::vector<NodeId>{0, 1, 2, 3});
        CHECK_THROWS_AS(cut_ratio(g, nb), MeasureDomainError);
        CHECK_THROWS_AS(conductance(g, nb), MeasureDomainError); // min volume 0
    }
    SUBCASE("empty boundary gives zero cut_ratio and conductance") {
        GraphBuilder b;
        for (int v = 0; v < 5; ++v) b.add_node(std::to_string(v));
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(3, 4);
        auto two = b.build();
        auto nb = boundary_of(two, std::vector<NodeId>{0, 1, 2});
        CHECK(cut_ratio(two, nb) == 0.0);
        CHECK(conductance(two, nb) == 0.0);
    }
    SUBCASE("members wired only outside have flake_odf 1") {
        GraphBuilder b;
        for (int v = 0; v < 4; ++v) b.add_node(std::to_string(v));
        b.add_edge(0, 2);
        b.add_edge(1, 3);
        auto cross = b.build();
        auto nb = boundary_of(cross, std::vector<NodeId>{0, 1});
        CHECK(flake_odf(cross, nb) == 1.0);
    }
    SUBCASE("every external pair an edge saturates cut_ratio") {
        GraphBuilder b;
        for (int v = 0; v < 4; ++v) b.add_node(std::to_string(v));
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) b.add_edge(i, j);
        auto k4 = b.build();
        auto nb = boundary_of(k4, std::vector<NodeId>{0, 1});
        CHECK(cut_ratio(k4, nb) == 1.0);
    }
}

TEST_CASE("aw_ncut degeneracies") {
    SUBCASE("uniform similarity 1 reduces to the plain normalized cut") {
        auto g = test::make_g4(); // single all-ones attribute
        auto nb = boundary_of(g, std::vector<NodeId>{0, 1, 2});
        CHECK(aw_ncut_uniform(g, nb, SimilarityKind::dot) ==
              doctest::Approx(1.0 / 7.0 + 1.0 / 1.0).epsilon(1e-15));
    }
    SUBCASE("zero end-node similarity on the cut contributes nothing") {
        GraphBuilder b;
        for (int v = 0; v < 5; ++v) b.add_node(std::to_string(v));
        const AttrId a = b.intern_attribute("a");
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(2, 3);
        b.add_edge(3, 4);
        b.set_attribute(0, a, 1.0);
        b.set_attribute(1, a, 1.0);
        b.set_attribute(3, a, 1.0);
        b.set_attribute(4, a, 1.0);
        auto g = b.build(false);
        auto nb = boundary_of(g, std::vector<NodeId>{0, 1});
        // cut edge (1,2): node 2 has no attributes -> weight 0
        CHECK(aw_ncut_uniform(g, nb, SimilarityKind::dot) == 0.0);
    }
    SUBCASE("zero weighted volume is an error") {
        GraphBuilder b;
        for (int v = 0; v < 4; ++v) b.add_node(std::to_string(v));
        b.intern_attribute("a");
        b.add_edge(0, 1);
        b.add_edge(2, 3);
        auto g = b.build(false); // nobody has the attribute
        auto nb = boundary_of(g, std::vector<NodeId>{0, 1});
        CHECK_THROWS_AS(aw_ncut_uniform(g, nb, SimilarityKind::dot), MeasureDomainError);
    }
}

TEST_CASE("baselines match brute-force enumeration on random graphs") {
    Rng rng(90210);
    for (int trial = 0; trial < 50; ++trial) {
        auto g = test::random_graph(rng, {.max_nodes = 50, .max_attrs = 5});
        const std::size_t size =
            2 + rng.below(std::min<std::size_t>(g.node_count() - 1, 10));
        auto members = test::random_members(rng, g.node_count(), size);
        auto nb = boundary_of(g, members);

        CHECK(average_degree(nb) == oracle::average_degree(g, members));
        if (members.size() < g.node_count())
            CHECK(cut_ratio(g, nb) == oracle::cut_ratio(g, members));
        std::uint64_t vol = 0;
        for (NodeId v : nb.members) vol += g.degree(v);
        if (vol != 0 && vol != 2 * g.edge_count())
            CHECK(conductance(g, nb) == oracle::conductance(g, members));
        CHECK(flake_odf(g, nb) == oracle::flake_odf(g, members));

        // grid-valued attributes keep both sides exact, so equality is ==
        try {
            const double mine = aw_ncut_uniform(g, nb, SimilarityKind::dot);
            CHECK(mine == oracle::aw_ncut_uniform(g, members, SimilarityKind::dot));
        } catch (const MeasureDomainError&) {
            // zero weighted volume; oracle would divide by zero too
        }

        std::vector<std::uint32_t> groups(g.node_count());
        for (auto& c : groups) c = static_cast<std::uint32_t>(rng.below(4));
        CHECK(modularity(g, Partition{groups}) ==
              doctest::Approx(oracle::modularity(g, groups)).epsilon(1e-12));
    }
}

TEST_CASE("baseline scores are invariant to node relabeling") {
    Rng rng(31);
    auto g = test::random_graph(rng, {.max_nodes = 20, .max_attrs = 3});
    // rebuild with reversed label insertion order
    GraphBuilder b;
    const auto n = static_cast<NodeId>(g.node_count());
    for (NodeId v = 0; v < n; ++v) b.add_node(g.node_label(n - 1 - v));
    for (AttrId f = 0; f < g.attribute_count(); ++f) b.intern_attribute(g.attribute_name(f));
    for (NodeId v = 0; v < n; ++v) {
        for (NodeId u : g.neighbors(v))
            if (v < u) b.add_edge(n - 1 - v, n - 1 - u);
        for (const auto& e : g.attributes(v)) b.set_attribute(n - 1 - v, e.attr, e.value);
    }
    auto h = b.build(false);

    auto members_g = test::random_members(rng, g.node_count(), 5);
    std::vector<NodeId> members_h;
    for (NodeId v : members_g) members_h.push_back(n - 1 - v);

    auto nb_g = boundary_of(g, members_g);
    auto nb_h = boundary_of(h, members_h);
    CHECK(average_degree(nb_g) == average_degree(nb_h));
    CHECK(cut_ratio(g, nb_g) == cut_ratio(h, nb_h));
    CHECK(flake_odf(g, nb_g) == flake_odf(h, nb_h));
}

TEST_CASE("bounded measures stay in [0,1] on random neighborhoods") {
    Rng rng(1212);
    for (int trial = 0; trial < 200; ++trial) {
        auto g = test::random_graph(rng, {.max_nodes = 30, .max_attrs = 3});
        const std::size_t size =
            2 + rng.below(std::min<std::size_t>(g.node_count() - 2, 8));
        auto members = test::random_members(rng, g.node_count(), size);
        auto nb = boundary_of(g, members);
        const double cr = cut_ratio(g, nb);
        CHECK(cr >= 0.0);
        CHECK(cr <= 1.0);
        const double fo = flake_odf(g, nb);
        CHECK(fo >= 0.0);
        CHECK(fo <= 1.0);
        std::uint64_t vol = 0;
        for (NodeId v : nb.members) vol += g.degree(v);
        if (vol != 0 && vol != 2 * g.edge_count()) {
            const double c = conductance(g, nb);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}
