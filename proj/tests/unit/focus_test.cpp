#include <doctest.h>

#include <cmath>
#include <vector>

#include "amen/focus.hpp"
#include "fixtures.hpp"

using namespace amen;

namespace {

/// Assemble a relevance vector directly from x values (all supported).
RelevanceVector make_rv(std::vector<double> x, std::size_t d = 0) {
    RelevanceVector rv;
    rv.attribute_count = d == 0 ? x.size() : d;
    for (std::size_t f = 0; f < x.size(); ++f) rv.attrs.push_back(static_cast<AttrId>(f));
    rv.x = std::move(x);
    rv.x_internal_hat.assign(rv.x.size(), 0.0);
    rv.x_external_hat.assign(rv.x.size(), 0.0);
    rv.x_internal.assign(rv.x.size(), 0.0);
    rv.x_external.assign(rv.x.size(), 0.0);
    rv.x_volume.assign(rv.x.size(), 0.0);
    rv.member_count = 2;
    return rv;
}

RelevanceVector g4b_rv() {
    auto g = test::make_g4b();
    auto nb = boundary_of(g, std::vector<NodeId>{0, 1, 2});
    return relevance_vector(g, nb, SimilarityKind::binary_mixed);
}

} // namespace

TEST_CASE("L1 picks the largest x entry") {
    auto rv = g4b_rv();
    auto r = focus_l1(rv);
    REQUIRE(r.weights.size() == 1);
    CHECK(r.weights[0].first == 0);
    CHECK(r.weights[0].second == 1.0);
    CHECK(r.score == doctest::Approx(48.0 / 121.0).epsilon(1e-14));
    CHECK_FALSE(r.anomalous);
}

TEST_CASE("L1 on all-negative entries flags the neighborhood") {
    auto r = focus_l1(make_rv({-0.3, -0.1}));
    REQUIRE(r.weights.size() == 1);
    CHECK(r.weights[0].first == 1);
    CHECK(r.score == doctest::Approx(-0.1));
    CHECK(r.anomalous);
    CHECK_FALSE(r.no_focus);
}

TEST_CASE("L1 breaks ties toward the lowest attribute id") {
    auto r = focus_l1(make_rv({0.5, 0.5}));
    CHECK(r.weights[0].first == 0);
}

TEST_CASE("no supported attribute floors the score at -1") {
    RelevanceVector rv;
    rv.attribute_count = 3;
    for (NormKind norm : {NormKind::l1, NormKind::l2}) {
        auto r = norm == NormKind::l1 ? focus_l1(rv) : focus_l2(rv);
        CHECK(r.score == -1.0);
        CHECK(r.no_focus);
        CHECK(r.anomalous);
        CHECK(r.weights.empty());
    }
    auto r = focus_topk(rv, 2);
    CHECK(r.score == -1.0);
    CHECK(r.no_focus);
}

TEST_CASE("L2 weights are proportional to the positive entries") {
    auto rv = g4b_rv();
    auto r = focus_l2(rv);
    const double x0 = 48.0 / 121.0, x1 = 403.0 / 2541.0;
    const double norm = std::sqrt(x0 * x0 + x1 * x1);
    CHECK(r.score == doctest::Approx(norm).epsilon(1e-12));
    CHECK(r.score == doctest::Approx(0.4272235).epsilon(1e-6));
    REQUIRE(r.weights.size() == 2);
    CHECK(r.weights[0].first == 0);
    CHECK(r.weights[0].second == doctest::Approx(x0 / norm).epsilon(1e-12));
    CHECK(r.weights[0].second == doctest::Approx(0.92854).epsilon(1e-5));
    CHECK(r.weights[1].second == doctest::Approx(0.37123).epsilon(1e-5));
    // unit L2 norm
    double sq = 0.0;
    for (const auto& [f, w] : r.weights) sq += w * w;
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("L2 with a single positive entry matches L1") {
    auto r2 = focus_l2(make_rv({-0.2, 0.4, -0.9}));
    auto r1 = focus_l1(make_rv({-0.2, 0.4, -0.9}));
    CHECK(r2.score == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(r2.score == doctest::Approx(r1.score).epsilon(1e-14));
    REQUIRE(r2.weights.size() == 1);
    CHECK(r2.weights[0].first == 1);
}

TEST_CASE("L2 with no positive entry falls back to the L1 selection") {
    auto r = focus_l2(make_rv({-0.3, -0.1}));
    CHECK(r.norm == NormKind::l2);
    CHECK(r.score == doctest::Approx(-0.1));
    CHECK(r.anomalous);
    REQUIRE(r.weights.size() == 1);
    CHECK(r.weights[0].first == 1);
}

TEST_CASE("top-k takes the k largest entries at weight 1/k") {
    auto rv = g4b_rv();
    auto r = focus_topk(rv, 2);
    const double x0 = 48.0 / 121.0, x1 = 403.0 / 2541.0;
    CHECK(r.score == doctest::Approx((x0 + x1) / 2.0).epsilon(1e-12));
    CHECK(r.score == doctest::Approx(0.277645).epsilon(1e-5));
    REQUIRE(r.weights.size() == 2);
    CHECK(r.weights[0].second == 0.5);
    CHECK(r.weights[1].second == 0.5);
}

TEST_CASE("top-1 equals L1") {
    auto rv = make_rv({0.2, -0.1, 0.7, 0.3});
    auto top = focus_topk(rv, 1);
    auto l1 = focus_l1(rv);
    CHECK(top.score == l1.score);
    CHECK(top.weights[0].first == l1.weights[0].first);
}

TEST_CASE("top-k over uniform entries returns the common value") {
    auto rv = make_rv({0.25, 0.25, 0.25});
    auto r = focus_topk(rv, 3);
    CHECK(r.score == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("top-k beyond the support truncates with a warning") {
    auto rv = make_rv({0.5, 0.1}, /*d=*/10);
    auto r = focus_topk(rv, 7);
    CHECK(r.truncated_k);
    REQUIRE(r.weights.size() == 2);
    CHECK(r.weights[0].second == doctest::Approx(0.5)); // 1/count
    CHECK(r.score == doctest::Approx(0.3));
    CHECK_THROWS_AS(focus_topk(rv, 0), InputError);
    CHECK_THROWS_AS(focus_topk(rv, 11), InputError);
}

TEST_CASE("top-k may mix positive and negative entries") {
    auto r = focus_topk(make_rv({0.5, -0.2, -0.4}), 2);
    CHECK(r.score == doctest::Approx((0.5 - 0.2) / 2.0));
}

TEST_CASE("L2 dominance over L1") {
    Rng rng(2024);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t d = 1 + rng.below(20);
        std::vector<double> x(d);
        std::size_t positives = 0;
        for (auto& v : x) {
            v = rng.uniform01() * 2.0 - 1.0;
            positives += v > 0.0;
        }
        auto rv = make_rv(x);
        const double l1 = focus_l1(rv).score;
        const double l2 = focus_l2(rv).score;
        if (positives >= 1) {
            CHECK(l2 >= l1 - 1e-12);
            if (positives >= 2) CHECK(l2 > l1);
            if (positives == 1) CHECK(l2 == doctest::Approx(l1).epsilon(1e-12));
        } else {
            CHECK(l2 == doctest::Approx(l1).epsilon(1e-12));
        }
    }
}

TEST_CASE("L2 closed form beats sampled feasible vectors") {
    Rng rng(5551);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 2 + rng.below(19);
        std::vector<double> x(d);
        for (auto& v : x) v = rng.uniform01() * 2.0 - 1.0;
        auto rv = make_rv(x);
        const auto result = focus_l2(rv);

        double positive_sq = 0.0;
        for (double v : x)
            if (v > 0.0) positive_sq += v * v;
        if (positive_sq > 0.0)
            CHECK(result.score == doctest::Approx(std::sqrt(positive_sq)).epsilon(1e-12));

        for (int sample = 0; sample < 100; ++sample) {
            // random nonnegative unit-L2 vector
            std::vector<double> w(d);
            double norm = 0.0;
            for (auto& v : w) {
                v = rng.uniform01();
                norm += v * v;
            }
            norm = std::sqrt(norm);
            double objective = 0.0;
            for (std::size_t f = 0; f < d; ++f) objective += (w[f] / norm) * x[f];
            CHECK(result.score >= objective - 1e-9);
        }
    }
}

TEST_CASE("L1 one-hot argmax beats sampled unit-L1 vectors") {
    Rng rng(606);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + rng.below(20);
        std::vector<double> x(d);
        for (auto& v : x) v = rng.uniform01() * 2.0 - 1.0;
        const double best = focus_l1(make_rv(x)).score;
        for (int sample = 0; sample < 100; ++sample) {
            std::vector<double> w(d);
            double total = 0.0;
            for (auto& v : w) {
                v = rng.uniform01();
                total += v;
            }
            double objective = 0.0;
            for (std::size_t f = 0; f < d; ++f) objective += (w[f] / total) * x[f];
            CHECK(best >= objective - 1e-12);
        }
    }
}

TEST_CASE("increasing a positive entry never lowers the L2 score") {
    Rng rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(5);
        for (auto& v : x) v = rng.uniform01() - 0.3;
        auto base = focus_l2(make_rv(x)).score;
        for (std::size_t f = 0; f < x.size(); ++f) {
            if (x[f] <= 0.0) continue;
            auto bumped = x;
            bumped[f] += 0.1;
            CHECK(focus_l2(make_rv(bumped)).score >= base - 1e-12);
        }
    }
}

TEST_CASE("positive scaling preserves the L1 argmax") {
    Rng rng(23);
    std::vector<double> x(6);
    for (auto& v : x) v = rng.uniform01() - 0.5;
    const auto base = focus_l1(make_rv(x));
    for (double scale : {0.5, 2.0, 13.7}) {
        auto scaled = x;
        for (auto& v : scaled) v *= scale;
        CHECK(focus_l1(make_rv(scaled)).weights[0].first == base.weights[0].first);
    }
}

TEST_CASE("rank_neighborhoods sorts ascending with id tie-breaks") {
    auto g = test::make_g4b();
    std::vector<NamedNeighborhood> batch{
        {"whole", {0, 1, 2, 3}},
        {"core", {0, 1, 2}},
        {"tail", {2, 3}},
    };
    auto ranked = rank_neighborhoods(g, batch, SimilarityKind::binary_mixed, NormKind::l1);
    REQUIRE(ranked.size() == 3);
    for (std::size_t i = 0; i + 1 < ranked.size(); ++i)
        CHECK(ranked[i].focus.score <= ranked[i + 1].focus.score);
    CHECK(ranked[0].rank == 1);

    SUBCASE("ties order by id") {
        std::vector<NamedNeighborhood> same{{"b", {0, 1, 2}}, {"a", {0, 1, 2}}};
        auto r = rank_neighborhoods(g, same, SimilarityKind::binary_mixed, NormKind::l1);
        CHECK(r[0].id == "a");
        CHECK(r[1].id == "b");
    }

    SUBCASE("degenerate entries are flagged, not fatal") {
        std::vector<NamedNeighborhood> mixed{{"ok", {0, 1, 2}}, {"broken", {3}}};
        auto r = rank_neighborhoods(g, mixed, SimilarityKind::binary_mixed, NormKind::l1);
        REQUIRE(r.size() == 2);
        CHECK(r[0].id == "ok");
        CHECK(r[0].error.empty());
        CHECK(r[1].id == "broken");
        CHECK_FALSE(r[1].error.empty());
    }

    SUBCASE("output independent of job count") {
        auto seq = rank_neighborhoods(g, batch, SimilarityKind::binary_mixed, NormKind::l2, 1, 1);
        auto par = rank_neighborhoods(g, batch, SimilarityKind::binary_mixed, NormKind::l2, 1, 8);
        REQUIRE(seq.size() == par.size());
        for (std::size_t i = 0; i < seq.size(); ++i) {
            CHECK(seq[i].id == par[i].id);
            CHECK(seq[i].focus.score == par[i].focus.score);
        }
    }
}
