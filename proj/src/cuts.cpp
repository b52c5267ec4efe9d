#include "hyperchrom/cuts.hpp"

#include "hyperchrom/errors.hpp"
#include "hyperchrom/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyperchrom {

bool is_cut(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s)
{
    std::vector<char> in(bundle.base().vertex_count(), 0);
    for (Vertex v : x)
        if (v < in.size())
            in[v] = 1;
    for (Vertex v = 0; v < in.size(); ++v)
        if (!in[v] && bundle.fiber(v).intersects(s))
            return false;
    return true;
}

bool is_cut(const FiberBundle& bundle, const Cut& cut)
{
    FiberSet s = bundle.empty_set();
    for (const auto& e : cut.s)
        s.set(bundle.index_of(e));
    return is_cut(bundle, cut.x, s);
}

std::vector<Edge> good_nonedges(const Hypergraph& g)
{
    if (g.require_uniform(2) != 2)
        throw Error(ErrorKind::NonUniform, "good non-edges need a graph");
    const std::size_t n = g.vertex_count();
    std::vector<boost::dynamic_bitset<>> nb(n, boost::dynamic_bitset<>(n));
    for (const auto& e : g.edges()) {
        nb[e[0]].set(e[1]);
        nb[e[1]].set(e[0]);
    }
    std::vector<Edge> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (!nb[u].test(v) && nb[u].intersects(nb[v]))
                out.push_back({u, v});
    return out;
}

namespace {

Hypergraph link_graph(const Hypergraph& g, Vertex v)
{
    std::vector<Edge> pairs;
    for (auto i : g.incident(v)) {
        Edge p;
        for (Vertex w : g.edge(i))
            if (w != v)
                p.push_back(w);
        pairs.push_back(std::move(p));
    }
    return Hypergraph(g.vertex_count(), pairs);
}

std::vector<std::uint32_t> as_witness(const std::vector<Vertex>& vs) { return {vs.begin(), vs.end()}; }

[[noreturn]] void f5_found(const std::string& where, std::vector<Vertex> copy)
{
    throw Error(ErrorKind::InternalInvariant, "F5-freeness contradicted (" + where + ")", as_witness(copy));
}

} // namespace

FiveCut find_5cut(const Hypergraph& g)
{
    if (g.require_uniform(3) != 3)
        throw Error(ErrorKind::NonUniform, "find_5cut needs a 3-uniform hypergraph");
    if (auto f5 = contains_f5(g))
        throw Error(ErrorKind::NotF5Free, "input contains F5", as_witness(f5->map));
    const std::size_t n = g.vertex_count();
    auto bundle = neighborhood_bundle(g);
    FiveCut out;
    auto prof = min_degree(g);
    out.c_measured = n >= 2 ? prof.ratio : Rational(0);
    Rational span = out.c_measured * Rational(BigInt(static_cast<unsigned long>(n > 0 ? n - 1 : 0)));
    BigInt fl;
    mpz_fdiv_q(fl.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
    out.bound = 4 * binomial(fl.get_ui(), 2);
    out.c_threshold = (std::sqrt(41.0) - 5.0) / 8.0;

    std::optional<Vertex> free_vertex;
    std::optional<Embedding> f4;
    for (Vertex v = 0; v < n; ++v) {
        auto e = contains_f4_at(g, v);
        if (!e) {
            free_vertex = v;
            break;
        }
        if (!f4)
            f4 = e;
    }

    if (free_vertex) {
        out.which_case = 1;
        out.v = *free_vertex;
        out.cut.s = good_nonedges(link_graph(g, *free_vertex));
    } else if (f4) {
        out.which_case = 2;
        VertexSet u(f4->map.begin(), f4->map.end());
        std::sort(u.begin(), u.end());
        out.f4 = u;
        // Pairwise link intersections are stars; a 2-matching yields an F5.
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i + 1; j < 4; ++j) {
                auto common = bundle.fiber(u[i]) & bundle.fiber(u[j]);
                auto pairs = bundle.edges_of(common);
                for (std::size_t a = 0; a < pairs.size(); ++a)
                    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
                        const auto &p = pairs[a], &q = pairs[b];
                        if (p[0] == q[0] || p[0] == q[1] || p[1] == q[0] || p[1] == q[1])
                            continue;
                        for (auto ei : g.incident(u[i])) {
                            const auto& e = g.edge(ei);
                            if (std::find(e.begin(), e.end(), u[j]) == e.end())
                                continue;
                            Vertex w = 0;
                            for (Vertex t : e)
                                if (t != u[i] && t != u[j])
                                    w = t;
                            if (w != p[0] && w != p[1])
                                f5_found("link intersection", {p[0], p[1], u[i], u[j], w});
                            f5_found("link intersection", {q[0], q[1], u[i], u[j], w});
                        }
                    }
            }
        // G' = union of the four links.
        std::vector<std::vector<int>> cert(n, std::vector<int>(n, -1));
        std::vector<std::size_t> deg(n, 0);
        for (std::size_t i = 0; i < 4; ++i)
            for (const auto& p : bundle.fiber_edges(u[i])) {
                if (cert[p[0]][p[1]] < 0) {
                    ++deg[p[0]];
                    ++deg[p[1]];
                }
                for (auto [a, b] : {std::pair{p[0], p[1]}, std::pair{p[1], p[0]}})
                    if (cert[a][b] < 0)
                        cert[a][b] = static_cast<int>(i);
            }
        std::vector<char> in_u(n, 0);
        for (Vertex x : u)
            in_u[x] = 1;
        Vertex v = 0;
        bool have = false;
        for (Vertex x = 0; x < n; ++x)
            if (!in_u[x] && (!have || deg[x] > deg[v])) {
                v = x;
                have = true;
            }
        if (!have)
            throw Error(ErrorKind::InternalInvariant, "no vertex outside the F4 copy");
        out.v = v;
        std::vector<VertexSet> parts(4);
        for (Vertex w = 0; w < n; ++w)
            if (cert[v][w] >= 0)
                parts[static_cast<std::size_t>(cert[v][w])].push_back(w);
        for (const auto& p : parts)
            for (std::size_t a = 0; a < p.size(); ++a)
                for (std::size_t b = a + 1; b < p.size(); ++b)
                    out.cut.s.push_back({p[a], p[b]});
        std::sort(out.cut.s.begin(), out.cut.s.end());
        out.cut.x = u;
        out.cut.x.push_back(v);
        std::sort(out.cut.x.begin(), out.cut.x.end());
    }

    if (!is_cut(bundle, out.cut))
        throw Error(ErrorKind::InternalInvariant, "constructed (X, S) is not a cut");
    if (out.cut.x.size() > 5)
        throw Error(ErrorKind::InternalInvariant, "cut has more than five vertices in X");
    return out;
}

namespace {

Hypergraph complete_bipartite(std::size_t q)
{
    std::vector<Edge> edges;
    for (Vertex a = 0; a < q; ++a)
        for (Vertex b = 0; b < q; ++b)
            edges.push_back({a, static_cast<Vertex>(q + b)});
    return Hypergraph(2 * q, edges);
}

} // namespace

LowIndependence find_low_independence_set(const Hypergraph& g, std::size_t d, std::size_t q, const Rational& eps,
    std::uint64_t seed, std::size_t max_attempts, const std::optional<DimWitness>& witness)
{
    if (d == 0 || q == 0)
        throw Error(ErrorKind::ParamViolation, "d and q must be positive");
    if (g.require_uniform(3) != 3)
        throw Error(ErrorKind::NonUniform, "low-independence sets are for 3-graphs");
    auto bundle = neighborhood_bundle(g);
    auto kqq = complete_bipartite(q);
    DimWitness w;
    if (witness) {
        if (witness->edges.size() < d || !audit_witness(bundle, kqq, *witness))
            throw Error(ErrorKind::NoWitness, "supplied witness fails the K_{q,q} section audit");
        w.edges.assign(witness->edges.begin(), witness->edges.begin() + static_cast<long>(d));
    } else {
        auto dim = dim_h(bundle, kqq, d);
        if (dim.dim < d)
            throw Error(ErrorKind::NoWitness, "dimension for K_{q,q} is " + std::to_string(dim.dim) + " < " + std::to_string(d));
        w = *dim.witness;
    }

    LowIndependence out;
    out.matching = w.edges;
    std::vector<char> blocked(g.vertex_count(), 0);
    for (const auto& e : w.edges)
        for (Vertex v : e)
            blocked[v] = 1;
    // One K_2 per transversal, taken from a K_{q,q} copy in its section.
    std::vector<FiberSet> sections{bundle.full_set()};
    for (const auto& e : w.edges) {
        std::vector<FiberSet> next;
        for (const auto& s : sections)
            for (Vertex x : e)
                next.push_back(s & bundle.fiber(x));
        sections = std::move(next);
    }
    for (const auto& s : sections) {
        auto host = fiber_graph(bundle, s);
        auto copy = find_embedding(host, kqq);
        if (!copy)
            throw Error(ErrorKind::InternalInvariant, "audited section lost its K_{q,q}");
        bool picked = false;
        for (std::size_t ei = 0; ei < kqq.edge_count() && !picked; ++ei) {
            Vertex a = copy->map[kqq.edge(ei)[0]], b = copy->map[kqq.edge(ei)[1]];
            if (blocked[a] || blocked[b])
                continue;
            out.pairs.push_back(normalize_set({a, b}, g.vertex_count()));
            blocked[a] = blocked[b] = 1;
            picked = true;
        }
        if (!picked) {
            // Another copy may avoid the used vertices.
            std::vector<Edge> free_edges;
            for (const auto& e : host.edges())
                if (!blocked[e[0]] && !blocked[e[1]])
                    free_edges.push_back(e);
            if (auto other = find_embedding(Hypergraph(g.vertex_count(), free_edges), kqq)) {
                Vertex a = other->map[kqq.edge(0)[0]], b = other->map[kqq.edge(0)[1]];
                out.pairs.push_back(normalize_set({a, b}, g.vertex_count()));
                blocked[a] = blocked[b] = 1;
                picked = true;
            }
        }
        if (!picked)
            throw Error(ErrorKind::AttemptsExhausted, "no vertex-disjoint K_2 left in a section; q is too small for d");
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, out.pairs.size() - 1);
    Rational limit = (1 + eps) * Rational(BigInt(static_cast<unsigned long>(d)));
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        VertexSet u;
        for (std::size_t i = 0; i < d; ++i) {
            const auto& p = out.pairs[pick(rng)];
            u.insert(u.end(), p.begin(), p.end());
        }
        for (const auto& e : w.edges)
            u.insert(u.end(), e.begin(), e.end());
        std::sort(u.begin(), u.end());
        if (std::adjacent_find(u.begin(), u.end()) != u.end())
            continue; // a pair drawn twice: |U| < 5d
        auto sub = induced(g, u);
        auto alpha = strong_independence_number(sub.graph);
        if (Rational(BigInt(static_cast<unsigned long>(alpha.size))) <= limit) {
            out.u = u;
            out.strong_independence = alpha.size;
            out.attempts = attempt;
            return out;
        }
    }
    throw Error(ErrorKind::AttemptsExhausted, "no sample met the strong independence bound in " + std::to_string(max_attempts) + " attempts");
}

} // namespace hyperchrom
