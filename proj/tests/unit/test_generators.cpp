#include <doctest.h>

#include "hyperchrom/constructions.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/patterns.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <set>

using namespace hyperchrom;

namespace {

std::size_t overlap(const Edge& a, const Edge& b)
{
    std::size_t c = 0;
    for (Vertex v : a)
        c += std::count(b.begin(), b.end(), v);
    return c;
}

// Counts r-sets of k-subsets of [n] with every element covered at most s
// times, by running over all r-tuples of subsets.
std::size_t brute_kneser_edges(std::size_t n, std::size_t k, std::size_t r, std::size_t s)
{
    std::vector<std::uint32_t> sets;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (static_cast<std::size_t>(std::popcount(m)) == k)
            sets.push_back(m);
    std::size_t count = 0;
    std::vector<std::size_t> idx(r);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t depth, std::size_t from) {
        if (depth == r) {
            for (std::size_t e = 0; e < n; ++e) {
                std::size_t c = 0;
                for (auto i : idx)
                    c += sets[i] >> e & 1;
                if (c > s)
                    return;
            }
            ++count;
            return;
        }
        for (std::size_t i = from; i < sets.size(); ++i) {
            idx[depth] = i;
            go(depth + 1, i + 1);
        }
    };
    go(0, 0);
    return count;
}

bool isomorphic(const Hypergraph& a, const Hypergraph& b)
{
    return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && find_embedding(a, b).has_value();
}

} // namespace

TEST_CASE("turan")
{
    CHECK(turan(9, 3, 3).edge_count() == 27);
    CHECK(turan(10, 3, 3).edge_count() == 36);
    CHECK(turan(4, 2, 2).edge_count() == 4);
    CHECK_THROWS_AS(turan(3, 4, 3), Error);
    for (std::size_t n = 1; n <= 30; ++n)
        for (std::size_t s = 1; s <= std::min<std::size_t>(5, n); ++s)
            for (std::size_t r = 1; r <= s; ++r) {
                if (n > 20 && r > 3)
                    continue; // keeps the materialized instances small
                CHECK(turan_edge_count(n, r, s) == static_cast<unsigned long>(turan(n, r, s).edge_count()));
            }
    CHECK(turan_edge_count(30, 5, 5) == 6 * 6 * 6 * 6 * 6);
}

TEST_CASE("cycles")
{
    auto c35 = cycle(3, 5);
    CHECK(c35.vertex_count() == 8);
    CHECK(c35.edge_count() == 5);
    auto e = cycle_edges(3, 5);
    std::vector<std::size_t> seq;
    for (std::size_t i = 0; i < e.size(); ++i)
        seq.push_back(overlap(e[i], e[(i + 1) % e.size()]));
    CHECK(seq == std::vector<std::size_t>{2, 1, 2, 1, 1});
    // The same cyclic sequence read from E_5 onwards.
    std::rotate(seq.begin(), seq.begin() + 4, seq.end());
    CHECK(seq == std::vector<std::size_t>{1, 2, 1, 2, 1});
    // E_5 = {v_7, v_8, v_1}; v_8 has degree one.
    CHECK(e[4] == Edge{6, 7, 0});
    CHECK(c35.degree(7) == 1);

    auto c38 = cycle(3, 8);
    CHECK(c38.vertex_count() == 12);
    CHECK(c38.edge_count() == 8);
    auto e8 = cycle_edges(3, 8);
    for (std::size_t i = 0; i < 8; ++i)
        CHECK(overlap(e8[i], e8[(i + 1) % 8]) == (i % 2 == 0 ? 2u : 1u));
    CHECK(cycle(4, 9).vertex_count() == 19);

    // Only consecutive edges meet.
    for (std::size_t r = 2; r <= 4; ++r)
        for (std::size_t m = 3; m <= 9; ++m) {
            if (m == 2 || (m % 2 == 0 && m < 4))
                continue;
            auto ed = cycle_edges(r, m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    bool adjacent = j == i + 1 || (i == 0 && j == m - 1);
                    CHECK((overlap(ed[i], ed[j]) > 0) == adjacent);
                }
        }
    CHECK_THROWS_AS(cycle(3, 2), Error);
    CHECK_THROWS_AS(cycle(1, 5), Error);
}

TEST_CASE("kneser")
{
    auto k72 = kneser(7, 2, 3, 1);
    CHECK(k72.graph.vertex_count() == 21);
    CHECK(k72.graph.edge_count() == 105);
    CHECK(k72.graph.edge_count() == brute_kneser_edges(7, 2, 3, 1));
    CHECK(kneser(5, 2, 3, 1).graph.edge_count() == 0);
    auto k64 = kneser(6, 4, 3, 2);
    CHECK(k64.graph.vertex_count() == 15);
    CHECK(k64.graph.edge_count() == brute_kneser_edges(6, 4, 3, 2));
    CHECK(kneser(7, 5, 3, 2).graph.edge_count() == brute_kneser_edges(7, 5, 3, 2));
    CHECK(kneser(8, 3, 4, 2).graph.edge_count() == brute_kneser_edges(8, 3, 4, 2));
    CHECK(k72.labels[0] == "1,2");
    CHECK_THROWS_AS(kneser(30, 15, 3, 1), Error);

    // Closed-form degrees against materialized instances.
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{9, 3}, {10, 3}, {8, 2}, {11, 3}}) {
        auto g = kneser(n, k, 3, 1).graph;
        CHECK(kneser3_degree(n, k, 1) == static_cast<unsigned long>(g.degree(0)));
    }
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 4}, {7, 5}, {7, 4}, {9, 6}}) {
        auto g = kneser(n, k, 3, 2).graph;
        CHECK(kneser3_degree(n, k, 2) == static_cast<unsigned long>(min_degree(g).min_degree));
        auto sets = kneser_sets(n, k);
        for (Vertex y = 1; y < sets.size(); ++y) {
            Vertex pair[2] = {0, y};
            auto j = static_cast<std::size_t>(std::popcount(sets[0] & sets[y]));
            CHECK(kneser3_2_codegree(n, k, j) == static_cast<unsigned long>(k_degree(g, pair)));
        }
    }
}

TEST_CASE("books, tk, named")
{
    CHECK(isomorphic(book(3, 2), named("f5")));
    auto t = tk(4, 3);
    CHECK(t.graph.vertex_count() == 10);
    CHECK(t.graph.edge_count() == 6);
    auto fano = named("fano");
    CHECK(fano.vertex_count() == 7);
    CHECK(fano.edge_count() == 7);
    for (Vertex a = 0; a < 7; ++a)
        for (Vertex b = a + 1; b < 7; ++b) {
            Vertex pair[2] = {a, b};
            CHECK(k_degree(fano, pair) == 1);
        }
    CHECK(b3(4, 2).edge_count() == 12);
    CHECK(b3(2, 1).edge_count() == 1);
    CHECK(!find_embedding(b3(6, 3), named("t5")));
}

TEST_CASE("construction profiles match materialized degrees")
{
    SUBCASE("f5")
    {
        auto c = construct_f5_lower({3, 1, 9, 9, 3});
        CHECK(c.profile.min_degree == static_cast<unsigned long>(min_degree(c.graph).min_degree));
        CHECK(c.profile.vertex_count == static_cast<unsigned long>(c.graph.vertex_count()));
        for (Vertex v = 0; v < c.graph.vertex_count(); ++v) {
            std::string cls = c.labels[v].substr(0, 1);
            for (const auto& cd : c.profile.classes)
                if (cd.name == cls)
                    CHECK(cd.degree == static_cast<unsigned long>(c.graph.degree(v)));
        }
        CHECK_THROWS_AS(profile_f5_lower({2, 2, 8, 8, 2}), Error);
    }
    SUBCASE("tkf4")
    {
        auto c = construct_tkf4_lower({3, 1, 9, 9, 1});
        CHECK(c.profile.min_degree == static_cast<unsigned long>(min_degree(c.graph).min_degree));
        for (Vertex v = 0; v < c.graph.vertex_count(); ++v) {
            std::string cls = c.labels[v].substr(0, 1);
            for (const auto& cd : c.profile.classes)
                if (cd.name == cls)
                    CHECK(cd.degree == static_cast<unsigned long>(c.graph.degree(v)));
        }
    }
    SUBCASE("tkfs")
    {
        for (std::size_t s : {5, 6}) {
            auto c = construct_tkfs_lower({s, 3, 1, 9, 2});
            CHECK(c.profile.min_degree == static_cast<unsigned long>(min_degree(c.graph).min_degree));
            for (Vertex v = 0; v < c.graph.vertex_count(); ++v) {
                std::string cls = c.labels[v].substr(0, 1);
                for (const auto& cd : c.profile.classes)
                    if (cd.name == cls)
                        CHECK(cd.degree == static_cast<unsigned long>(c.graph.degree(v)));
            }
        }
        CHECK_THROWS_AS(profile_tkfs_lower({4, 3, 1, 9, 2}), Error);
    }
    SUBCASE("fano")
    {
        auto c = construct_fano_lower({2, Rational(1, 2), 14, 12});
        CHECK(c.graph.vertex_count() == 47);
        CHECK(c.profile.min_degree == static_cast<unsigned long>(min_degree(c.graph).min_degree));
        for (Vertex v = 0; v < c.graph.vertex_count(); ++v) {
            std::string cls = c.labels[v].substr(0, 1);
            for (const auto& cd : c.profile.classes)
                if (cd.name == cls)
                    CHECK(cd.degree == static_cast<unsigned long>(c.graph.degree(v)));
        }
    }
    SUBCASE("t5")
    {
        auto c = construct_t5_lower({4, Rational(0), 21});
        CHECK(c.graph.vertex_count() == 36);
        CHECK(c.profile.min_degree == static_cast<unsigned long>(min_degree(c.graph).min_degree));
        CHECK_THROWS_AS(profile_t5_lower({4, Rational(1, 4), 21}), Error);
    }
    SUBCASE("fano co-degree")
    {
        for (auto [k, N] : std::vector<std::pair<std::size_t, long>>{{4, 10}, {4, 20}, {2, 5}}) {
            auto c = construct_fano_codegree_lower({k, Rational(0), N});
            auto p = min_degree(c.graph, 2);
            CHECK(c.profile.min_degree == *p.min_k_degree);
            CHECK(c.profile.ratio == *p.k_ratio);
        }
        CHECK_THROWS_AS(profile_fano_codegree_lower({5, Rational(-1, 10), 35}), Error);
        CHECK_THROWS_AS(profile_fano_codegree_lower({10, Rational(1, 10), 5}), Error);
    }
}

TEST_CASE("limit profiles")
{
    for (const auto& id : construction_ids()) {
        auto lp = limit_profile(id);
        CHECK(lp.paper_point_ratio == lp.reference);
        Rational sum = 0;
        for (const auto& q : lp.paper_point)
            sum += q * (id == "tkfs_lower" && &q == &lp.paper_point[1] ? 3 : 1);
        CHECK(sum == 1);
    }
    CHECK(limit_profile("f5_lower").paper_point_ratio == Rational(6, 49));
    CHECK(limit_profile("f5_lower").grid_ratio <= Rational(6, 49));
    CHECK(limit_profile("tkfs_lower", 5).paper_point_ratio == Rational(1, 24));
    CHECK(limit_profile("tkfs_lower", 5).grid_ratio > Rational(1, 24));
}

TEST_CASE("scaled profiles approach the reference constants")
{
    for (const auto& id : construction_ids()) {
        Rational prev_gap = -1;
        for (long e : {4, 8, 12}) {
            auto p = scaled_profile(id, power(BigInt(10), e));
            Rational gap = p.ratio - p.reference;
            if (gap < 0)
                gap = -gap;
            Rational rel = gap / p.reference;
            if (e == 12)
                CHECK(rel < Rational(1, 100));
            if (prev_gap >= 0)
                CHECK(gap <= prev_gap);
            prev_gap = gap;
        }
    }
    CHECK_THROWS_AS(scaled_profile("nope", 1), Error);
}
