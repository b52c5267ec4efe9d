#include <doctest.h>

#include "hyperchrom/generators.hpp"
#include "hyperchrom/kneserlab.hpp"

#include <random>

using namespace hyperchrom;

namespace {

SetFamily random_family(std::mt19937_64& rng, std::size_t n, std::size_t count)
{
    std::vector<std::uint64_t> members;
    for (std::size_t i = 0; i < count; ++i)
        members.push_back(rng() & ((std::uint64_t{1} << n) - 1));
    return SetFamily(n, members);
}

} // namespace

TEST_CASE("weighted size")
{
    auto w = frac(1, 3);
    CHECK(weighted_size(all_subsets(5), w) == 1);
    CHECK(weighted_size(all_subsets(0), w) == 1);
    std::vector<std::uint64_t> with_first;
    for (std::uint64_t m = 0; m < 32; ++m)
        if (m & 1)
            with_first.push_back(m);
    CHECK(weighted_size(SetFamily(5, with_first), w) == w);
    CHECK(weighted_size(SetFamily(5, {}), w) == 0);
    CHECK_THROWS_AS(weighted_size(all_subsets(3), frac(3, 2)), Error);

    // Star through element 1, closed upward, at w = 2/3: equality needs k = 1.
    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<std::uint64_t> star;
        for (auto m : kneser_sets(7, k))
            if (m & 1)
                star.push_back(m);
        auto got = weighted_size(upward_closure(SetFamily(7, star)), frac(2, 3));
        if (k == 1)
            CHECK(got == frac(2, 3));
        else
            CHECK(got < frac(2, 3));
        if (k == 3)
            CHECK(got == frac(1432, 2187));
    }

    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        auto a = random_family(rng, 8, 40), b = random_family(rng, 8, 40);
        auto both = family_intersection(a, b);
        auto wa = weighted_size(a, w), wb = weighted_size(b, w);
        CHECK(weighted_size(family_union(a, b), w) + weighted_size(both, w) == wa + wb);
        CHECK(weighted_size(both, w) <= wa);
        CHECK(wa + weighted_size(family_complement(a), w) == 1);
    }
}

TEST_CASE("closures")
{
    CHECK(upward_closure(SetFamily(6, {0})) == all_subsets(6));
    CHECK(upward_closure(SetFamily(6, {})).size() == 0);
    CHECK(downward_closure(SetFamily(4, {15})) == all_subsets(4));
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto f = random_family(rng, 10, 6);
        auto up = upward_closure(f);
        CHECK(upward_closure(up) == up);
        CHECK(is_increasing(up));
        for (auto m : f.members())
            CHECK(up.contains(m));
        CHECK(is_decreasing(downward_closure(f)));
    }
    CHECK_THROWS_AS(upward_closure(SetFamily(23, {})), Error);
    try {
        upward_closure(SetFamily(23, {}));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::GroundTooLarge);
    }
}

TEST_CASE("FKG on monotone families")
{
    std::mt19937_64 rng(12);
    for (std::size_t n : {4, 6, 8, 10, 12}) {
        for (int t = 0; t < 10; ++t) {
            auto up = upward_closure(random_family(rng, n, 1 + rng() % 4));
            auto down = downward_closure(random_family(rng, n, 1 + rng() % 4));
            for (auto w : {frac(1, 2), frac(2, 3), frac(1, 5)})
                CHECK(weighted_size(family_intersection(up, down), w) <= weighted_size(up, w) * weighted_size(down, w));
        }
    }
}

TEST_CASE("r-wise intersecting")
{
    std::vector<std::uint64_t> star;
    for (auto m : kneser_sets(6, 3))
        if (m & 4)
            star.push_back(m);
    for (std::size_t r = 1; r <= 6; ++r)
        CHECK(is_r_wise_intersecting(SetFamily(6, star), r).intersecting);

    auto two = is_r_wise_intersecting(SetFamily::from_sets(3, {{1}, {2}}), 2);
    CHECK(!two.intersecting);
    CHECK(two.counterexample == std::vector<std::uint64_t>{2, 4});

    // {1,2},{1,3},{2,3}: pairwise but not 3-wise intersecting.
    auto tri = SetFamily::from_sets(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(is_r_wise_intersecting(tri, 2).intersecting);
    auto t3 = is_r_wise_intersecting(tri, 3);
    CHECK(!t3.intersecting);
    CHECK(t3.counterexample.size() == 3);

    CHECK_THROWS_AS(is_r_wise_intersecting(tri, 3, 2), Error);
}

TEST_CASE("claim1_certificate")
{
    auto kg = kneser(6, 4, 3, 2);
    auto c = find_coloring(kg.graph, 2);
    REQUIRE(c);
    auto rep = claim1_certificate(6, 4, 3, 2, *c);
    CHECK(rep.all_hold);
    CHECK(rep.levels.size() == c->color_count());
    for (const auto& l : rep.levels)
        CHECK(l.holds);
    for (bool b : rep.class_intersecting)
        CHECK(b);
    CHECK(rep.complement_matches);
    // Sizes below k: 1 + 6 + 15 + 20 weighted at w = 2/3.
    Rational tail = Rational(1 + 12 + 60 + 160) / 729;
    CHECK(rep.binomial_tail == tail);

    Coloring mono(std::vector<std::uint32_t>(kg.graph.vertex_count(), 0));
    try {
        claim1_certificate(6, 4, 3, 2, mono);
        FAIL("expected ImproperColoring");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ImproperColoring);
        CHECK(e.witness().size() == 3);
    }
    CHECK_THROWS_AS(claim1_certificate(6, 4, 3, 1, *c), Error);
}
