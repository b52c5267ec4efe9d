#include <doctest.h>

#include "hyperchrom/constructions.hpp"
#include "hyperchrom/cuts.hpp"
#include "hyperchrom/generators.hpp"

#include <random>

using namespace hyperchrom;

namespace {

bool triangle_free(const Hypergraph& g)
{
    for (const auto& e : g.edges())
        for (Vertex w = 0; w < g.vertex_count(); ++w)
            if (w != e[0] && w != e[1] && g.has_edge(normalize_set({e[0], w}, g.vertex_count())) &&
                g.has_edge(normalize_set({e[1], w}, g.vertex_count())))
                return false;
    return true;
}

Hypergraph graph_from_mask(std::size_t n, std::uint64_t mask)
{
    std::vector<Edge> edges;
    std::size_t bit = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++bit)
            if (mask >> bit & 1)
                edges.push_back({u, v});
    return Hypergraph(n, edges);
}

} // namespace

TEST_CASE("cuts")
{
    auto t = turan(9, 3, 3);
    auto b = neighborhood_bundle(t);
    VertexSet all;
    for (Vertex v = 0; v < 9; ++v)
        all.push_back(v);
    CHECK(is_cut(b, all, b.full_set()));
    CHECK(is_cut(b, {}, b.empty_set()));
    Cut within{{}, {}};
    for (const auto& part : turan_parts(9, 3))
        for (std::size_t i = 0; i < part.size(); ++i)
            for (std::size_t j = i + 1; j < part.size(); ++j)
                within.s.push_back(normalize_set({part[i], part[j]}, 9));
    CHECK(is_cut(b, within));
    CHECK(!is_cut(b, {}, b.full_set()));
}

TEST_CASE("good non-edges")
{
    auto c5 = Hypergraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
    CHECK(good_nonedges(c5).size() == 5);
    auto k33 = Hypergraph(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
    CHECK(good_nonedges(k33).size() == 6);
    CHECK(good_nonedges(Hypergraph(4, {})).empty());
    CHECK_THROWS_AS(good_nonedges(Hypergraph(3, {{0, 1, 2}})), Error);

    // At least m - n/2 good non-edges, checked as 2|good| >= 2m - n.
    for (std::size_t n = 1; n <= 6; ++n) {
        std::uint64_t pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            auto g = graph_from_mask(n, mask);
            if (!triangle_free(g))
                continue;
            CHECK(2 * good_nonedges(g).size() + n >= 2 * g.edge_count());
        }
    }
    std::mt19937_64 rng(19);
    int checked = 0;
    while (checked < 200) {
        std::size_t n = 8 + rng() % 5;
        std::uint64_t mask = rng() & ((std::uint64_t{1} << (n * (n - 1) / 2)) - 1);
        mask &= rng(); // thinner graphs are triangle-free more often
        auto g = graph_from_mask(n, mask);
        if (!triangle_free(g))
            continue;
        ++checked;
        CHECK(2 * good_nonedges(g).size() + n >= 2 * g.edge_count());
    }
}

TEST_CASE("5-cuts")
{
    auto t9 = turan(9, 3, 3);
    auto c = find_5cut(t9);
    CHECK(c.which_case == 1);
    CHECK(c.cut.x.empty());
    CHECK(c.cut.s.size() == 6);
    auto parts = turan_parts(9, 3);
    for (const auto& pair : c.cut.s) {
        bool same = false;
        for (const auto& part : parts)
            same = same || (std::count(part.begin(), part.end(), pair[0]) && std::count(part.begin(), part.end(), pair[1]));
        CHECK(same);
        CHECK(std::count(pair.begin(), pair.end(), c.v) == 0);
    }
    CHECK(is_cut(neighborhood_bundle(t9), c.cut));

    auto f = construct_f5_lower({3, 1, 9, 9, 3});
    auto fc = find_5cut(f.graph);
    CHECK(is_cut(neighborhood_bundle(f.graph), fc.cut));
    CHECK(fc.cut.x.size() <= 5);

    // Two disjoint K_4^(3): every vertex lies in an F4.
    Hypergraph two(8, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}});
    auto tc = find_5cut(two);
    CHECK(tc.which_case == 2);
    CHECK(tc.cut.x.size() == 5);
    CHECK(is_cut(neighborhood_bundle(two), tc.cut));

    try {
        find_5cut(named("f5"));
        FAIL("expected NotF5Free");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotF5Free);
        CHECK(e.witness().size() == 5);
    }

    for (std::size_t n : {15, 21, 30}) {
        auto r = find_5cut(turan(n, 3, 3));
        CHECK(BigInt(static_cast<unsigned long>(r.cut.s.size())) >= r.bound);
        CHECK(r.c_threshold == doctest::Approx(0.175390529679));
    }
}

TEST_CASE("low independence sets")
{
    // E_1 = {0,1,2}; each vertex of E_1 gets a private pair.
    Hypergraph g(9, {{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {2, 7, 8}});
    auto r = find_low_independence_set(g, 1, 1, 1, 42);
    CHECK(r.u.size() == 5);
    CHECK(r.strong_independence <= 2);
    CHECK(strong_independence_number(induced(g, r.u).graph).size == r.strong_independence);
    auto again = find_low_independence_set(g, 1, 1, 1, 42);
    CHECK(again.u == r.u);

    try {
        find_low_independence_set(g, 2, 1, 1, 42);
        FAIL("expected NoWitness");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoWitness);
    }
    CHECK_THROWS_AS(find_low_independence_set(g, 1, 3, 1, 42), Error);
}
