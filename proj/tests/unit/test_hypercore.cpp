#include <doctest.h>

#include "hyperchrom/coloring.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/hypergraph.hpp"

#include <random>

using namespace hyperchrom;

namespace {

// F5 with a..e = 0..4.
Hypergraph f5() { return Hypergraph(5, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}}); }

std::size_t brute_strong_independence(const Hypergraph& h)
{
    std::size_t best = 0;
    for (std::uint32_t mask = 0; mask < (1u << h.vertex_count()); ++mask) {
        bool ok = true;
        for (const auto& e : h.edges()) {
            int hits = 0;
            for (Vertex v : e)
                hits += mask >> v & 1;
            ok &= hits <= 1;
        }
        if (ok)
            best = std::max<std::size_t>(best, static_cast<std::size_t>(__builtin_popcount(mask)));
    }
    return best;
}

// Colorability by trying all k^n assignments.
bool brute_colorable(const Hypergraph& h, std::size_t k)
{
    std::size_t n = h.vertex_count();
    std::vector<std::uint32_t> c(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& e : h.edges()) {
            bool mono = true;
            for (Vertex v : e)
                mono &= c[v] == c[e[0]];
            if (mono) {
                ok = false;
                break;
            }
        }
        if (ok)
            return true;
        std::size_t i = 0;
        while (i < n && ++c[i] == k)
            c[i++] = 0;
        if (i == n)
            return false;
    }
}

Hypergraph random_hypergraph(std::mt19937& rng, std::size_t n, std::size_t r, std::size_t m)
{
    std::vector<Edge> edges;
    std::vector<Vertex> all(n);
    for (Vertex v = 0; v < n; ++v)
        all[v] = v;
    for (std::size_t i = 0; i < m; ++i) {
        std::shuffle(all.begin(), all.end(), rng);
        edges.emplace_back(all.begin(), all.begin() + static_cast<long>(r));
    }
    return Hypergraph(n, edges);
}

} // namespace

TEST_CASE("construction canonicalizes and rejects bad input")
{
    Hypergraph h(3, {{2, 0, 1}});
    CHECK(h.edge_count() == 1);
    CHECK(h.edge(0) == Edge{0, 1, 2});
    CHECK(h.uniformity() == std::optional<std::size_t>(3));
    CHECK(Hypergraph(4, {{0, 1, 2}, {0, 1, 2}}).edge_count() == 1);
    CHECK_THROWS_AS(Hypergraph(2, {{0, 2}}), Error);
    try {
        Hypergraph(2, {{0, 2}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VertexOutOfRange);
    }
    try {
        Hypergraph(2, {{}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyEdge);
    }
    CHECK(!Hypergraph(4, {{0, 1}, {1, 2, 3}}).uniformity());
}

TEST_CASE("induced and restriction")
{
    auto h = f5();
    auto cde = induced(h, {2, 3, 4});
    CHECK(cde.graph.edge_count() == 1);
    CHECK(cde.to_parent == VertexSet{2, 3, 4});
    CHECK(induced(h, {0, 1, 2, 3, 4}).graph == h);
    CHECK(induced(h, {0, 1}).graph.edge_count() == 0);

    auto ab = restriction(h, {0, 1});
    CHECK(ab.edges() == std::vector<Edge>{{0, 1}});
    CHECK(restriction(h, {0, 1, 2, 3, 4}) == h);
    CHECK(restriction(h, {}).edge_count() == 0);

    auto comps = components_of_restriction(h, {0, 1});
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].edges == std::vector<Edge>{{0, 1}});
    CHECK(components_of_restriction(h, {}).empty());
    auto c38 = cycle(3, 8);
    CHECK(components_of_restriction(c38, c38.edge(0)).size() == 1);
}

TEST_CASE("independence")
{
    auto h = f5();
    CHECK(is_strongly_independent(h, {4}));
    CHECK(!is_strongly_independent(h, {0, 1}));
    CHECK(!is_independent(h, {0, 2, 3, 4}));
    CHECK(strong_independence_number(Hypergraph(3, {{0, 1, 2}})).size == 1);
    CHECK(strong_independence_number(Hypergraph(6, {})).size == 6);
    auto s = strong_independence_number(h);
    CHECK(s.size == 2);
    CHECK(s.size == brute_strong_independence(h));
    CHECK(is_strongly_independent(h, s.witness));

    std::mt19937 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto g = random_hypergraph(rng, 10, 3, 1 + trial % 9);
        auto si = strong_independence_number(g);
        CHECK(si.size == brute_strong_independence(g));
        CHECK(is_strongly_independent(g, si.witness));
        CHECK(is_independent(g, si.witness));
    }
    CHECK_THROWS_AS(strong_independence_number(Hypergraph(41, {})), Error);
}

TEST_CASE("degrees")
{
    auto t = turan(9, 3, 3);
    auto p = min_degree(t);
    CHECK(p.min_degree == 9);
    CHECK(p.ratio == frac(9, 36));
    Vertex cross[2] = {0, 3};
    Vertex within[2] = {0, 1};
    CHECK(k_degree(t, cross) == 3);
    CHECK(k_degree(t, within) == 0);
    auto p2 = min_degree(t, 2);
    CHECK(*p2.min_k_degree == 0);
    Vertex dup[2] = {1, 1};
    CHECK_THROWS_AS(k_degree(t, dup), Error);
    CHECK_THROWS_AS(k_degree(Hypergraph(4, {{0, 1}, {1, 2, 3}}), cross), Error);

    std::size_t sum = 0;
    for (Vertex v = 0; v < t.vertex_count(); ++v)
        sum += degree(t, v);
    CHECK(sum == 3 * t.edge_count());

    auto single = Hypergraph(3, {{0, 1, 2}});
    for (Vertex v = 0; v < 3; ++v)
        CHECK(degree(single, v) == 1);
}

TEST_CASE("weak coloring checks")
{
    auto single = Hypergraph(3, {{0, 1, 2}});
    CHECK(is_weak_coloring(single, Coloring({0, 0, 1})));
    CHECK(!is_weak_coloring(single, Coloring({0, 0, 0})));
    CHECK_THROWS_AS(is_weak_coloring(single, Coloring({0, 1})), Error);
    Coloring c({5, 5, 2});
    CHECK(c.color_count() == 2);
    CHECK(c[2] == 1);
}

TEST_CASE("chromatic number")
{
    auto single = Hypergraph(3, {{0, 1, 2}});
    auto r = chromatic_number(single, 5);
    CHECK(r.chi == 2);
    CHECK(r.refuted == std::vector<std::size_t>{1});
    CHECK(is_weak_coloring(single, r.witness));

    auto c35 = cycle(3, 5);
    auto rc = chromatic_number(c35, 4);
    CHECK(rc.chi == 2);
    CHECK(is_weak_coloring(c35, rc.witness));

    CHECK(chromatic_number(Hypergraph(4, {}), 3).chi == 1);
    CHECK_THROWS_AS(chromatic_number(Hypergraph(2, {{0}}), 3), Error);

    // Graph K4 needs 4 colors.
    Hypergraph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK_THROWS_AS(chromatic_number(k4, 3), Error);
    CHECK(chromatic_number(k4, 4).chi == 4);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r_ = 2 + trial % 2;
        auto g = random_hypergraph(rng, 8, r_, 4 + trial % 25);
        auto res = chromatic_number(g, 8);
        CHECK(is_weak_coloring(g, res.witness));
        CHECK(res.witness.color_count() <= res.chi);
        CHECK(brute_colorable(g, res.chi));
        if (res.chi > 1)
            CHECK(!brute_colorable(g, res.chi - 1));
    }
}

TEST_CASE("s-partite")
{
    auto t = turan(9, 3, 3);
    auto parts = is_s_partite(t, 3);
    REQUIRE(parts);
    CHECK(parts->size() == 3);
    CHECK(!is_s_partite(cycle(3, 5), 3));
    CHECK(is_s_partite(cycle(3, 8), 3));
}

TEST_CASE("blow-up")
{
    auto single = Hypergraph(3, {{0, 1, 2}});
    auto b = blow_up(single, 2);
    CHECK(b.vertex_count() == 6);
    CHECK(b.edge_count() == 8);
    CHECK(blow_up(single, 1) == single);
    CHECK(blow_up(Hypergraph(3, {}), 3).edge_count() == 0);
    auto c35 = cycle(3, 5);
    auto bc = blow_up(c35, 2);
    CHECK(bc.edge_count() == c35.edge_count() * 8);
    CHECK(chromatic_number(bc, 4).chi == chromatic_number(c35, 4).chi);
}
