#include <catch2/catch.hpp>

#include "testutil.hpp"

using namespace opz;
using testutil::proc;

TEST_CASE("the top of a family") {
    CHECK(HereditaryFamily().top() == OrderProcess());
    CHECK(HereditaryFamily(std::vector<OrderProcess>{}).top() == OrderProcess());

    const OrderProcess g1 = proc({{{1, 2}, 1.0}});
    const OrderProcess g2 = proc({{{2, 3}, 2.0}});
    const HereditaryFamily fam({g1, g2});
    CHECK(fam.top() == proc({{{1, 2}, 1.0}, {{1, 3}, 2.0}, {{2, 3}, 2.0}}));
    CHECK(HereditaryFamily({g1}).top() == g1);
}

TEST_CASE("membership") {
    const HereditaryFamily fam({proc({{{1, 2}, 1.0}}), proc({{{2, 3}, 2.0}})});
    CHECK(fam.contains(OrderProcess()));
    for (const auto& g : fam.generators()) CHECK(fam.contains(g));
    CHECK(fam.contains(proc({{{1, 2}, 2.0}})));   // later switching, smaller process
    CHECK_FALSE(fam.contains(proc({{{1, 2}, 0.5}})));
    CHECK_FALSE(fam.contains(proc({{{4, 5}, 1.0}})));
}

TEST_CASE("denoted set is join-closed and downward closed") {
    Rng rng(83);
    for (int i = 0; i < 100; ++i) {
        std::vector<OrderProcess> gens;
        const std::size_t k = 1 + rng.below(3);
        for (std::size_t g = 0; g < k; ++g)
            gens.push_back(testutil::random_process(rng, 8, 4, 5));
        const HereditaryFamily fam(std::move(gens));
        const OrderProcess z1 = testutil::random_member(rng, fam);
        const OrderProcess z2 = testutil::random_member(rng, fam);
        REQUIRE(fam.contains(z1));
        REQUIRE(fam.contains(z2));
        CHECK(fam.contains(join(z1, z2)));
        CHECK(fam.contains(testutil::random_below(rng, z1)));

        // membership matches the pointwise relation-level containment
        std::vector<const OrderProcess*> ps{&z1, &fam.top()};
        bool pointwise = true;
        for (Time t : probe_grid_of(ps))
            pointwise = pointwise && leq(z1.at(t), fam.top().at(t));
        CHECK(pointwise);
    }
}

TEST_CASE("pointwise evaluation of the top is the relation join of the generators") {
    Rng rng(89);
    for (int i = 0; i < 60; ++i) {
        std::vector<OrderProcess> gens;
        for (std::size_t g = 0; g < 3; ++g)
            gens.push_back(testutil::random_process(rng, 8, 4, 5));
        const HereditaryFamily fam(gens);
        std::vector<const OrderProcess*> ps{&fam.top()};
        for (const auto& g : gens) ps.push_back(&g);
        for (Time t : probe_grid_of(ps)) {
            PartialOrder expect;
            for (const auto& g : gens) expect = join(expect, g.at(t));
            CHECK(fam.top().at(t) == expect);
        }
    }
}

TEST_CASE("cover witnesses: worked example") {
    const HereditaryFamily fam({proc({{{1, 2}, 0.5}})});
    const OrderProcess z = proc({{{1, 2}, 1.0}});
    const auto ws = cover_witnesses(z, fam, 0.1);
    REQUIRE(ws.size() == 1);
    CHECK(ws[0] == proc({{{1, 2}, 1.1}}));
    CHECK(fam.contains(ws[0]));
    CHECK(verify_covering(z, fam, ws, 0.1).pass);

    CHECK(cover_witnesses(OrderProcess(), fam, 0.1).empty());
    CHECK_THROWS_AS(cover_witnesses(proc({{{1, 2}, 0.25}}), fam, 0.1), NotAMember);
}

TEST_CASE("cover witnesses: two pairs at distinct times give single-step witnesses") {
    const HereditaryFamily fam({proc({{{1, 2}, 0.5}}), proc({{{3, 4}, 1.5}})});
    const OrderProcess z = proc({{{1, 2}, 1.0}, {{3, 4}, 2.0}});
    REQUIRE(fam.contains(z));
    const auto ws = cover_witnesses(z, fam, 0.25);
    REQUIRE(ws.size() == 2);
    for (const auto& w : ws) {
        CHECK(fam.contains(w));
        CHECK(w.switching_times().size() <= 1);
    }
    CHECK(verify_covering(z, fam, ws, 0.25).pass);
}

TEST_CASE("cover witnesses verify on random instances") {
    Rng rng(97);
    for (int i = 0; i < 60; ++i) {
        std::vector<OrderProcess> gens;
        const std::size_t k = 1 + rng.below(3);
        for (std::size_t g = 0; g < k; ++g)
            gens.push_back(testutil::random_process(rng, 8, 4, 5));
        const HereditaryFamily fam(std::move(gens));
        const OrderProcess z = testutil::random_member(rng, fam);
        const double eps = (1.0 + static_cast<double>(rng.below(8))) / 32.0;
        const auto ws = cover_witnesses(z, fam, eps);
        CHECK(ws.size() == z.pair_count());
        for (const auto& w : ws) CHECK(fam.contains(w));
        CHECK(verify_covering(z, fam, ws, eps).pass);
    }
}
