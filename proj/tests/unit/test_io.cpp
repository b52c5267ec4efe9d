#include <doctest.h>

#include "hyperchrom/constructions.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/io.hpp"

#include <filesystem>
#include <random>
#include <sstream>

using namespace hyperchrom;

namespace {

template <class Read>
auto parse(const std::string& text, Read read)
{
    std::istringstream in(text);
    return read(in);
}

Hypergraph nhg(const std::string& text)
{
    return parse(text, [](std::istream& in) { return read_nhg(in); });
}

FiberBundle nfb(const std::string& text)
{
    return parse(text, [](std::istream& in) { return read_nfb(in); });
}

SetFamily nsf(const std::string& text)
{
    return parse(text, [](std::istream& in) { return read_nsf(in); });
}

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::InternalInvariant;
}

} // namespace

TEST_CASE("nhg")
{
    auto c = cycle(3, 5);
    auto text = write_nhg(c);
    CHECK(text.rfind("nhg 1\n" + std::to_string(cycle_vertex_count(3, 5)) + " 5\n", 0) == 0);
    CHECK(nhg(text) == c);
    CHECK(write_nhg(nhg(text)) == text);

    // Any edge order is accepted; the writer is canonical.
    CHECK(write_nhg(nhg("nhg 1\n4 2\n3 2 1\n0 1 2\n")) == "nhg 1\n4 2\n0 1 2\n1 2 3\n");
    CHECK(write_nhg(Hypergraph(3, {})) == "nhg 1\n3 0\n");

    for (const auto& h : {kneser(7, 2, 3, 1).graph, turan(9, 3, 3), named("fano"), construct_f5_lower({3, 1, 9, 9, 3}).graph}) {
        auto t = write_nhg(h);
        CHECK(write_nhg(nhg(t)) == t);
    }

    CHECK(kind_of([] { nhg("nhg 2\n1 0\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { nhg("nhg 1\n3 1\n0 3\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { nhg("nhg 1\n3 2\n0 1\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { nhg("nhg 1\n3 1\n0 x\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { nhg("nhg 1\n3 1\n\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("labels")
{
    auto g = kneser(5, 2, 3, 1);
    auto text = write_labels(g.labels);
    CHECK(text.rfind("0 1,2\n1 1,3\n", 0) == 0);
    std::istringstream in(text);
    auto back = read_labels(in, g.graph.vertex_count());
    CHECK(back == g.labels);
    CHECK(write_labels(back) == text);
}

TEST_CASE("nfb")
{
    auto b = neighborhood_bundle(named("f5"));
    auto text = write_nfb(b);
    CHECK(text.rfind("nfb 1\n5 2\nnhg 1\n5 3\n", 0) == 0);
    auto back = nfb(text);
    CHECK(back == b);
    CHECK(write_nfb(back) == text);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 3 + rng() % 6, f = 3 + rng() % 4, rg = 1 + rng() % 2;
        std::vector<Edge> edges;
        for (Vertex a = 0; a < n; ++a)
            for (Vertex c = a + 1; c < n; ++c)
                if (rng() % 3 == 0)
                    edges.push_back({a, c});
        std::vector<FiberSet> gamma;
        std::size_t universe = rg == 1 ? f : f * (f - 1) / 2;
        for (std::size_t v = 0; v < n; ++v) {
            FiberSet s(universe);
            for (std::size_t i = 0; i < universe; ++i)
                s[i] = rng() % 2;
            gamma.push_back(s);
        }
        FiberBundle rb(Hypergraph(n, edges), f, rg, gamma);
        auto rt = write_nfb(rb);
        CHECK(nfb(rt) == rb);
        CHECK(write_nfb(nfb(rt)) == rt);
    }

    auto dir = std::filesystem::temp_directory_path() / "hyperchrom_io_test";
    std::filesystem::create_directories(dir);
    write_file(dir / "base.nhg", write_nhg(b.base()));
    auto body = text.substr(text.find("0 ", text.find("nhg 1\n5 3\n") + 10));
    // Re-home the fiber blocks under a file reference.
    std::string ref = "nfb 1\n5 2\n@base.nhg\n";
    auto inline_base = write_nhg(b.base());
    ref += text.substr(std::string("nfb 1\n5 2\n").size() + inline_base.size());
    write_file(dir / "ref.nfb", ref);
    CHECK(load_nfb(dir / "ref.nfb") == b);
    std::filesystem::remove_all(dir);

    CHECK(kind_of([] { nfb("nfb 1\n3 2\nnhg 1\n1 0\n0 1\n0 1 2\n"); }) == ErrorKind::ParseError);
    CHECK(kind_of([] { nfb("nfb 1\n3 2\nnhg 1\n1 0\n0 1\n1 0\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("nsf")
{
    auto fam = SetFamily::from_sets(4, {{}, {0, 2}, {1}, {0, 1, 2, 3}});
    auto text = write_nsf(fam);
    CHECK(text == "nsf 1\n4 4\n\n1\n0 2\n0 1 2 3\n");
    CHECK(nsf(text) == fam);
    CHECK(write_nsf(nsf(text)) == text);

    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        std::size_t n = 1 + rng() % 12;
        std::vector<std::uint64_t> members;
        for (int i = 0; i < 20; ++i)
            members.push_back(rng() & ((std::uint64_t{1} << n) - 1));
        SetFamily f(n, members);
        auto ft = write_nsf(f);
        CHECK(nsf(ft) == f);
        CHECK(write_nsf(nsf(ft)) == ft);
    }
    CHECK(kind_of([] { nsf("nsf 1\n3 1\n5\n"); }) == ErrorKind::ParseError);
}

TEST_CASE("cut")
{
    auto c = find_5cut(turan(9, 3, 3));
    auto text = write_cut(c.cut);
    std::istringstream in(text);
    auto back = read_cut(in);
    CHECK(back.x == c.cut.x);
    CHECK(back.s == c.cut.s);
    CHECK(write_cut(back) == text);
    CHECK(text.rfind("X\nS ", 0) == 0);
}
