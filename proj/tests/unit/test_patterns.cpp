#include <doctest.h>

#include "hyperchrom/constructions.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/patterns.hpp"

#include <algorithm>
#include <random>

using namespace hyperchrom;

namespace {

// F5 copies by trying every ordered 5-tuple of distinct vertices.
bool brute_has_f5(const Hypergraph& g)
{
    const std::size_t n = g.vertex_count();
    auto has = [&](Vertex a, Vertex b, Vertex c) {
        Edge e{a, b, c};
        std::sort(e.begin(), e.end());
        return g.has_edge(e);
    };
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b)
            for (Vertex c = 0; c < n; ++c)
                for (Vertex d = c + 1; d < n; ++d) {
                    if (c == a || c == b || d == a || d == b)
                        continue;
                    if (!has(a, b, c) || !has(a, b, d))
                        continue;
                    for (Vertex e = 0; e < n; ++e)
                        if (e != a && e != b && e != c && e != d && has(c, d, e))
                            return true;
                }
    return false;
}

Hypergraph random3(std::mt19937& rng, std::size_t n, std::size_t m)
{
    std::vector<Edge> edges;
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
    while (edges.size() < m) {
        Vertex a = pick(rng), b = pick(rng), c = pick(rng);
        if (a != b && b != c && a != c)
            edges.push_back({a, b, c});
    }
    return Hypergraph(n, edges);
}

} // namespace

TEST_CASE("generic embedding")
{
    auto f5 = named("f5");
    CHECK(!find_embedding(turan(9, 3, 3), f5));
    auto kg = kneser(8, 2, 3, 1).graph;
    auto e = find_embedding(kg, f5);
    REQUIRE(e);
    CHECK(validate_embedding(kg, f5, *e));

    Hypergraph edge(3, {{0, 1, 2}});
    CHECK(find_embedding(kg, edge));
    CHECK(!find_embedding(Hypergraph(5, {}), edge));
    CHECK(find_embedding(f5, f5));
}

TEST_CASE("F5 detector agrees with generic search and brute force")
{
    auto f5 = named("f5");
    for (std::size_t n = 3; n <= 15; ++n)
        CHECK(!contains_f5(turan(n, 3, 3)));
    auto kg = kneser(8, 2, 3, 1).graph;
    auto w = contains_f5(kg);
    REQUIRE(w);
    CHECK(validate_embedding(kg, f5, *w));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 6 + trial % 10;
        auto g = random3(rng, n, 2 + trial % 14);
        bool fast = contains_f5(g).has_value();
        bool generic = find_embedding(g, f5).has_value();
        CHECK(fast == generic);
        if (n <= 10)
            CHECK(fast == brute_has_f5(g));
        // Monotone under edge deletion.
        if (!generic) {
            std::vector<Edge> sub(g.edges().begin(), g.edges().end());
            sub.resize(sub.size() / 2);
            CHECK(!find_embedding(Hypergraph(n, sub), f5));
        }
    }
}

TEST_CASE("F4 at a vertex")
{
    auto t = turan(9, 3, 3);
    for (Vertex v = 0; v < 9; ++v)
        CHECK(!contains_f4_at(t, v));
    auto f4 = named("f4");
    for (Vertex v = 0; v < 4; ++v) {
        auto e = contains_f4_at(f4, v);
        REQUIRE(e);
        CHECK(std::find(e->map.begin(), e->map.end(), v) != e->map.end());
    }
    CHECK(!contains_f4_at(Hypergraph(4, {}), 2));
}

TEST_CASE("TKF cores")
{
    auto t = tk(4, 3);
    auto core = contains_tkf(t.graph, 4);
    REQUIRE(core);
    CHECK(*core == VertexSet{0, 1, 2, 3});
    CHECK(!contains_tkf(turan(9, 3, 3), 4));
    CHECK(contains_tkf(named("f5"), 4) == std::optional<VertexSet>(VertexSet{0, 1, 2, 3}));
    CHECK(!contains_tkf(kneser(9, 3, 3, 1).graph, 4));
    // s <= r: a single 3-edge has every pair of a 3-set, but never as E ∩ S exactly.
    CHECK(!contains_tkf(Hypergraph(3, {{0, 1, 2}}), 3));
    CHECK(contains_tkf(tk(3, 3).graph, 3));
}

TEST_CASE("Fano detector agrees with generic search")
{
    auto fano = named("fano");
    auto self = contains_fano(fano);
    REQUIRE(self);
    CHECK(validate_embedding(fano, fano, *self));
    CHECK(!contains_fano(named("t5")));
    CHECK(contains_named(fano, "s7"));

    std::mt19937 rng(31);
    int found = 0;
    for (int t = 0; t < 60; ++t) {
        auto g = random3(rng, 8, 20 + t % 30);
        auto fast = contains_fano(g);
        CHECK(fast.has_value() == find_embedding(g, fano).has_value());
        found += fast.has_value();
    }
    // A relabelled copy inside noise.
    for (int t = 0; t < 10; ++t) {
        std::vector<Vertex> perm(10);
        for (Vertex i = 0; i < 10; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        auto noise = random3(rng, 10, 15);
        std::vector<Edge> edges(noise.edges().begin(), noise.edges().end());
        for (const auto& e : fano.edges())
            edges.push_back({perm[e[0]], perm[e[1]], perm[e[2]]});
        CHECK(contains_fano(Hypergraph(10, edges)));
        ++found;
    }
    CHECK(found >= 10);
}
