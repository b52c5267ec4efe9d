#include <doctest.h>

#include "hyperchrom/generators.hpp"
#include "hyperchrom/structure.hpp"

#include <algorithm>
#include <random>

using namespace hyperchrom;

namespace {

// Every assignment of vertices to r parts, checked against the definition.
bool brute_near(const Hypergraph& h, std::size_t r)
{
    const std::size_t n = h.vertex_count();
    std::vector<std::size_t> a(n, 0);
    while (true) {
        NearPartition p;
        p.parts.assign(r, {});
        for (Vertex v = 0; v < n; ++v)
            p.parts[a[v]].push_back(v);
        for (const auto& e : h.edges())
            if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return a[v] == 0; }))
                p.special.push_back(e);
        p.mono = p.special.size() == 1;
        if (check_near_partition(h, r, p).empty())
            return true;
        std::size_t i = 0;
        while (i < n && ++a[i] == r)
            a[i++] = 0;
        if (i == n)
            return false;
    }
}

} // namespace

TEST_CASE("near r-partitions")
{
    auto f5 = named("f5");
    auto p = near_r_partition(f5, 3);
    REQUIRE(p);
    CHECK(p->parts[0] == VertexSet{2, 3, 4});
    CHECK(p->special == std::vector<Edge>{{2, 3, 4}});
    CHECK(p->mono);

    auto c = cycle(3, 5);
    auto cp = near_r_partition(c, 3);
    REQUIRE(cp);
    CHECK(cp->mono);
    auto e5 = cycle_edges(3, 5)[4];
    std::sort(e5.begin(), e5.end());
    CHECK(cp->special == std::vector<Edge>{e5});
    CHECK(cp->parts[0] == VertexSet{0, 3, 6, 7});
    CHECK(check_near_partition(c, 3, *cp).empty());

    auto one = near_r_partition(Hypergraph(3, {{0, 1, 2}}), 3);
    REQUIRE(one);
    CHECK(check_near_partition(Hypergraph(3, {{0, 1, 2}}), 3, *one).empty());

    auto t = near_r_partition(turan(9, 3, 3), 3);
    REQUIRE(t);
    CHECK(t->special.empty());
    CHECK(check_near_partition(turan(9, 3, 3), 3, *t).empty());

    // K_4^3 has no near 3-partition.
    CHECK(!near_r_partition(named("k4"), 3));
    CHECK_THROWS_AS(near_r_partition(f5, 4), Error);

    std::mt19937 rng(4);
    std::uniform_int_distribution<Vertex> pick(0, 6);
    for (int trial = 0; trial < 80; ++trial) {
        std::vector<Edge> edges;
        for (int i = 0; i < 2 + trial % 5; ++i) {
            Vertex a = pick(rng), b = pick(rng), d = pick(rng);
            if (a != b && b != d && a != d)
                edges.push_back({a, b, d});
        }
        Hypergraph h(7, edges);
        auto got = near_r_partition(h, 3);
        CHECK(got.has_value() == brute_near(h, 3));
        if (got)
            CHECK(check_near_partition(h, 3, *got).empty());
    }
}

TEST_CASE("partite extendible")
{
    auto f5 = named("f5");
    CHECK(!is_partite_extendible(f5, {2, 3, 4}, {0, 1}));
    auto empty = is_partite_extendible(f5, {}, {0, 1});
    REQUIRE(empty);
    CHECK(empty->size() == 3);

    auto c = cycle(3, 5);
    auto cp = near_r_partition(c, 3);
    REQUIRE(cp);
    VertexSet rest;
    for (std::size_t i = 1; i < 3; ++i)
        rest.insert(rest.end(), cp->parts[i].begin(), cp->parts[i].end());
    std::sort(rest.begin(), rest.end());
    auto special = cp->special[0];
    auto ext = is_partite_extendible(c, special, rest);
    REQUIRE(ext);
    CHECK(check_partite_extension(c, special, rest, *ext).empty());

    CHECK_THROWS_AS(is_partite_extendible(f5, {0, 1}, {1, 2}), Error);

    // A claimed partition that splits an extending component is rejected.
    Hypergraph star(4, {{0, 1, 2}, {0, 1, 3}});
    CHECK(!check_partite_extension(star, {2, 3}, {0, 1}, {{2}, {3}, {}}).empty());
    CHECK(check_partite_extension(star, {2, 3}, {0, 1}, {{2, 3}, {}, {}}).empty());
}

TEST_CASE("critical, syntactic part")
{
    auto c = critical_syntactic(cycle(3, 5));
    CHECK(c.mono == Verdict::Yes);
    CHECK(c.degree_one == Verdict::Yes);
    CHECK(c.turan_density == Verdict::Undecidable);
    CHECK(c.stability == Verdict::Undecidable);
    REQUIRE(c.reference);
    CHECK(c.reference->find("is critical") != std::string::npos);

    auto f = critical_syntactic(named("f5"));
    CHECK(f.mono == Verdict::Yes);
    CHECK(f.degree_one == Verdict::Yes);
    CHECK(f.degree_one_count >= 1);
    CHECK(!f.reference);

    auto c5 = critical_syntactic(cycle(5, 5));
    CHECK(c5.mono == Verdict::Yes);
    CHECK(c5.degree_one == Verdict::Yes);
    REQUIRE(c5.reference);
    CHECK(c5.reference->find("not critical") != std::string::npos);

    CHECK(critical_syntactic(named("k4")).mono == Verdict::No);
}

TEST_CASE("theorem1_gate")
{
    auto g = theorem1_gate(cycle(3, 5));
    CHECK(g.applies);
    REQUIRE(g.partition);
    for (const auto& cc : g.components)
        CHECK(cc.extension);
    CHECK(theorem1_gate(turan(6, 3, 3)).applies);
    CHECK(!theorem1_gate(named("k4")).applies);
}
