#include "hyperchrom/patterns.hpp"

#include "hyperchrom/generators.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace hyperchrom {

namespace {

class EmbeddingSearch {
public:
    EmbeddingSearch(const Hypergraph& host, const Hypergraph& pattern,
        const std::vector<std::pair<Vertex, Vertex>>& pins, const PatternBudget& budget)
        : host_(host), pat_(pattern), budget_(budget), map_(pattern.vertex_count(), kUnmapped),
          used_(host.vertex_count(), 0), stamp_(host.vertex_count(), 0)
    {
        for (auto [p, h] : pins) {
            if (p >= pattern.vertex_count() || h >= host.vertex_count())
                throw Error(ErrorKind::VertexOutOfRange, "pin outside pattern or host");
        }
        plan(pins);
    }

    std::optional<Embedding> run()
    {
        if (pat_.vertex_count() > host_.vertex_count())
            return std::nullopt;
        if (!search(0))
            return std::nullopt;
        Embedding e;
        e.map = map_;
        for (const auto& pe : pat_.edges()) {
            Edge img;
            for (Vertex v : pe)
                img.push_back(map_[v]);
            std::sort(img.begin(), img.end());
            e.image_edges.push_back(*host_.find_edge(img));
        }
        return e;
    }

private:
    static constexpr Vertex kUnmapped = static_cast<Vertex>(-1);

    struct Step {
        Vertex p;
        std::optional<Vertex> pinned;
        std::vector<std::size_t> closing; // pattern edges completed here
        std::vector<std::size_t> partial; // pattern edges still open, touched here
        std::optional<std::size_t> source; // edge used to generate candidates
    };

    void plan(const std::vector<std::pair<Vertex, Vertex>>& pins)
    {
        const std::size_t np = pat_.vertex_count();
        std::vector<int> pos(np, -1);
        std::vector<Vertex> order;
        std::vector<std::optional<Vertex>> pinned(np);
        for (auto [p, h] : pins) {
            if (pos[p] < 0) {
                pos[p] = static_cast<int>(order.size());
                order.push_back(p);
            }
            pinned[p] = h;
        }
        auto adj = cooccurrence_graph(pat_);
        while (order.size() < np) {
            Vertex best = 0;
            long best_key[3] = {-1, -1, -1};
            for (Vertex v = 0; v < np; ++v) {
                if (pos[v] >= 0)
                    continue;
                long linked = 0;
                for (Vertex u : adj[v])
                    linked += pos[u] >= 0;
                long key[3] = {pat_.degree(v) > 0 ? 1L : 0L, linked, static_cast<long>(pat_.degree(v))};
                if (std::lexicographical_compare(best_key, best_key + 3, key, key + 3)) {
                    std::copy(key, key + 3, best_key);
                    best = v;
                }
            }
            pos[best] = static_cast<int>(order.size());
            order.push_back(best);
        }
        for (std::size_t i = 0; i < np; ++i) {
            Step st;
            st.p = order[i];
            st.pinned = pinned[st.p];
            std::size_t best_mapped = 0;
            for (auto ei : pat_.incident(st.p)) {
                const auto& e = pat_.edge(ei);
                std::size_t earlier = 0;
                int last = -1;
                for (Vertex u : e) {
                    last = std::max(last, pos[u]);
                    if (pos[u] < static_cast<int>(i))
                        ++earlier;
                }
                if (last == static_cast<int>(i))
                    st.closing.push_back(ei);
                else if (earlier >= 1)
                    st.partial.push_back(ei);
                if (earlier > best_mapped) {
                    best_mapped = earlier;
                    st.source = ei;
                }
            }
            steps_.push_back(std::move(st));
        }
    }

    // Host edges of size `size` containing every vertex of `t`, as indices.
    template <class Fn>
    void host_edges_containing(const VertexSet& t, std::size_t size, Fn&& fn) const
    {
        Vertex pivot = t.front();
        for (Vertex v : t)
            if (host_.degree(v) < host_.degree(pivot))
                pivot = v;
        VertexSet sorted = t;
        std::sort(sorted.begin(), sorted.end());
        for (auto ei : host_.incident(pivot)) {
            const auto& e = host_.edge(ei);
            if (e.size() == size && std::includes(e.begin(), e.end(), sorted.begin(), sorted.end()))
                if (!fn(ei))
                    return;
        }
    }

    VertexSet mapped_part(const Edge& pe) const
    {
        VertexSet out;
        for (Vertex u : pe)
            if (map_[u] != kUnmapped)
                out.push_back(map_[u]);
        return out;
    }

    bool consistent(const Step& st) const
    {
        for (auto ei : st.closing) {
            Edge img = mapped_part(pat_.edge(ei));
            std::sort(img.begin(), img.end());
            if (!host_.has_edge(img))
                return false;
        }
        for (auto ei : st.partial) {
            VertexSet t = mapped_part(pat_.edge(ei));
            if (t.size() < 2)
                continue;
            bool found = false;
            host_edges_containing(t, pat_.edge(ei).size(), [&](std::size_t) {
                found = true;
                return false;
            });
            if (!found)
                return false;
        }
        return true;
    }

    bool try_vertex(std::size_t depth, Vertex h)
    {
        const Step& st = steps_[depth];
        if (used_[h] || host_.degree(h) < pat_.degree(st.p))
            return false;
        map_[st.p] = h;
        used_[h] = 1;
        if (consistent(st) && search(depth + 1))
            return true;
        used_[h] = 0;
        map_[st.p] = kUnmapped;
        return false;
    }

    bool search(std::size_t depth)
    {
        if (depth == steps_.size())
            return true;
        if (++nodes_ > budget_.max_nodes)
            throw Error(ErrorKind::SearchCapExceeded, "embedding search exceeded " + std::to_string(budget_.max_nodes) + " nodes");
        const Step& st = steps_[depth];
        if (st.pinned)
            return try_vertex(depth, *st.pinned);
        if (!st.source) {
            for (Vertex h = 0; h < host_.vertex_count(); ++h)
                if (try_vertex(depth, h))
                    return true;
            return false;
        }
        const Edge& pe = pat_.edge(*st.source);
        VertexSet t = mapped_part(pe);
        std::vector<Vertex> cands;
        ++epoch_;
        host_edges_containing(t, pe.size(), [&](std::size_t ei) {
            for (Vertex h : host_.edge(ei))
                if (!used_[h] && stamp_[h] != epoch_) {
                    stamp_[h] = epoch_;
                    cands.push_back(h);
                }
            return true;
        });
        std::sort(cands.begin(), cands.end());
        for (Vertex h : cands)
            if (try_vertex(depth, h))
                return true;
        return false;
    }

    const Hypergraph& host_;
    const Hypergraph& pat_;
    PatternBudget budget_;
    std::vector<Step> steps_;
    std::vector<Vertex> map_;
    std::vector<char> used_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::uint64_t nodes_ = 0;
};

} // namespace

std::optional<Embedding> find_embedding(const Hypergraph& host, const Hypergraph& pattern,
    const std::vector<std::pair<Vertex, Vertex>>& pins, const PatternBudget& budget)
{
    auto e = EmbeddingSearch(host, pattern, pins, budget).run();
    if (e && !validate_embedding(host, pattern, *e))
        throw Error(ErrorKind::InternalInvariant, "embedding search returned an invalid embedding");
    return e;
}

std::optional<Embedding> find_embedding(const Hypergraph& host, const Hypergraph& pattern, const PatternBudget& budget)
{
    return find_embedding(host, pattern, {}, budget);
}

bool validate_embedding(const Hypergraph& host, const Hypergraph& pattern, const Embedding& e)
{
    if (e.map.size() != pattern.vertex_count())
        return false;
    VertexSet image = e.map;
    std::sort(image.begin(), image.end());
    if (std::adjacent_find(image.begin(), image.end()) != image.end())
        return false;
    if (!image.empty() && image.back() >= host.vertex_count())
        return false;
    for (const auto& pe : pattern.edges()) {
        Edge img;
        for (Vertex v : pe)
            img.push_back(e.map[v]);
        std::sort(img.begin(), img.end());
        if (!host.has_edge(img))
            return false;
    }
    return true;
}

std::optional<Embedding> contains_f5(const Hypergraph& g)
{
    if (g.require_uniform(3) != 3)
        throw Error(ErrorKind::NonUniform, "F5 detection needs a 3-uniform hypergraph");
    const std::size_t n = g.vertex_count();
    std::unordered_map<std::uint64_t, std::vector<Vertex>> link;
    auto key = [n](Vertex a, Vertex b) { return a < b ? std::uint64_t{a} * n + b : std::uint64_t{b} * n + a; };
    for (const auto& e : g.edges()) {
        link[key(e[0], e[1])].push_back(e[2]);
        link[key(e[0], e[2])].push_back(e[1]);
        link[key(e[1], e[2])].push_back(e[0]);
    }
    // Pairs in canonical order, so the witness does not depend on hashing.
    std::vector<std::uint64_t> pairs;
    for (const auto& [k, l] : link)
        if (l.size() >= 2)
            pairs.push_back(k);
    std::sort(pairs.begin(), pairs.end());
    for (auto k : pairs) {
        auto a = static_cast<Vertex>(k / n), b = static_cast<Vertex>(k % n);
        auto common = link[k];
        std::sort(common.begin(), common.end());
        for (std::size_t i = 0; i < common.size(); ++i)
            for (std::size_t j = i + 1; j < common.size(); ++j) {
                Vertex c = common[i], d = common[j];
                auto it = link.find(key(c, d));
                if (it == link.end())
                    continue;
                std::optional<Vertex> e;
                for (Vertex z : it->second)
                    if (z != a && z != b && (!e || z < *e))
                        e = z;
                if (!e)
                    continue;
                Embedding emb;
                emb.map = {a, b, c, d, *e};
                Hypergraph f5 = named("f5");
                for (const auto& pe : f5.edges()) {
                    Edge img;
                    for (Vertex v : pe)
                        img.push_back(emb.map[v]);
                    std::sort(img.begin(), img.end());
                    emb.image_edges.push_back(*g.find_edge(img));
                }
                return emb;
            }
    }
    return std::nullopt;
}

std::optional<Embedding> contains_f4_at(const Hypergraph& g, Vertex v)
{
    if (g.require_uniform(3) != 3)
        throw Error(ErrorKind::NonUniform, "F4 detection needs a 3-uniform hypergraph");
    if (v >= g.vertex_count())
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v));
    Hypergraph f4 = named("f4");
    // Vertex 1 lies in all three edges; 0, 2, 3 are interchangeable.
    for (Vertex role : {Vertex{1}, Vertex{0}})
        if (auto e = find_embedding(g, f4, {{role, v}}))
            return e;
    return std::nullopt;
}

std::optional<VertexSet> contains_tkf(const Hypergraph& g, std::size_t s, const PatternBudget& budget)
{
    std::size_t r = g.require_uniform(0);
    const std::size_t n = g.vertex_count();
    if (s < 2)
        throw Error(ErrorKind::BadArity, "core size must be at least 2");
    if (r == 0)
        return std::nullopt;
    using Bits = boost::dynamic_bitset<>;
    auto adj_list = cooccurrence_graph(g);
    std::vector<Bits> adj(n, Bits(n));
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : adj_list[v])
            adj[v].set(u);

    // Exact-intersection condition for s <= r.
    auto exact_pairs = [&](const VertexSet& S) {
        std::vector<char> in(n, 0);
        for (Vertex v : S)
            in[v] = 1;
        for (std::size_t i = 0; i < S.size(); ++i)
            for (std::size_t j = i + 1; j < S.size(); ++j) {
                bool ok = false;
                for (auto ei : g.incident(S[i])) {
                    const auto& e = g.edge(ei);
                    std::size_t hits = 0;
                    bool has_j = false;
                    for (Vertex z : e) {
                        hits += in[z];
                        has_j |= z == S[j];
                    }
                    if (has_j && hits == 2) {
                        ok = true;
                        break;
                    }
                }
                if (!ok)
                    return false;
            }
        return true;
    };

    std::uint64_t nodes = 0;
    VertexSet clique;
    std::optional<VertexSet> found;
    std::function<void(Bits)> extend = [&](Bits cand) {
        if (found)
            return;
        if (++nodes > budget.max_nodes)
            throw Error(ErrorKind::SearchCapExceeded, "core search exceeded node budget");
        if (clique.size() == s) {
            if (s > r || exact_pairs(clique))
                found = clique;
            return;
        }
        if (clique.size() + cand.count() < s)
            return;
        for (auto v = cand.find_first(); v != Bits::npos; v = cand.find_next(v)) {
            cand.reset(v);
            if (adj_list[v].size() + 1 < s)
                continue;
            clique.push_back(static_cast<Vertex>(v));
            extend(cand & adj[v]);
            clique.pop_back();
            if (found || clique.size() + cand.count() < s)
                return;
        }
    };
    Bits all(n);
    all.set();
    extend(all);
    return found;
}

Hypergraph pattern_by_id(const std::string& id) { return named(id); }

} // namespace hyperchrom

namespace hyperchrom {

std::optional<Embedding> contains_fano(const Hypergraph& g)
{
    if (g.edge_count() == 0)
        return std::nullopt;
    if (g.require_uniform(3) != 3)
        throw Error(ErrorKind::NonUniform, "Fano detection needs a 3-uniform hypergraph");
    const std::size_t n = g.vertex_count();
    std::unordered_map<std::uint64_t, std::vector<Vertex>> link;
    auto key = [n](Vertex a, Vertex b) { return a < b ? std::uint64_t{a} * n + b : std::uint64_t{b} * n + a; };
    for (const auto& e : g.edges()) {
        link[key(e[0], e[1])].push_back(e[2]);
        link[key(e[0], e[2])].push_back(e[1]);
        link[key(e[1], e[2])].push_back(e[0]);
    }
    for (auto& [k, l] : link)
        std::sort(l.begin(), l.end());
    static const std::vector<Vertex> none;
    auto common = [&](Vertex a, Vertex b) -> const std::vector<Vertex>& {
        auto it = link.find(key(a, b));
        return it == link.end() ? none : it->second;
    };

    // Lines abc, ade, afg, bdf, beg, cdg, cef. The automorphisms fixing the
    // line abc and the point d permute a, b, c arbitrarily, so a < b < c.
    std::vector<Vertex> g1, g2;
    for (const auto& l : g.edges()) {
        const Vertex a = l[0], b = l[1], c = l[2];
        for (Vertex d = 0; d < n; ++d) {
            if (d == a || d == b || d == c)
                continue;
            const auto& cd = common(c, d);
            if (cd.empty())
                continue;
            for (Vertex e : common(a, d)) {
                if (e == b || e == c)
                    continue;
                const auto& be = common(b, e);
                if (be.empty())
                    continue;
                g1.clear();
                std::set_intersection(cd.begin(), cd.end(), be.begin(), be.end(), std::back_inserter(g1));
                if (g1.empty())
                    continue;
                for (Vertex f : common(b, d)) {
                    if (f == a || f == c || f == e || !g.has_edge(normalize_set({c, e, f}, n)))
                        continue;
                    const auto& af = common(a, f);
                    g2.clear();
                    std::set_intersection(g1.begin(), g1.end(), af.begin(), af.end(), std::back_inserter(g2));
                    for (Vertex x : g2) {
                        if (x == a || x == b || x == c || x == d || x == e || x == f)
                            continue;
                        Embedding emb;
                        emb.map = {a, b, c, d, e, f, x};
                        const Hypergraph plane = named("fano");
                        for (const auto& pe : plane.edges()) {
                            Edge img;
                            for (Vertex v : pe)
                                img.push_back(emb.map[v]);
                            std::sort(img.begin(), img.end());
                            emb.image_edges.push_back(*g.find_edge(img));
                        }
                        if (!validate_embedding(g, plane, emb))
                            throw Error(ErrorKind::InternalInvariant, "Fano search returned an invalid embedding");
                        return emb;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<Embedding> contains_named(const Hypergraph& g, const std::string& id, const PatternBudget& budget)
{
    if (id == "f5")
        return contains_f5(g);
    if (id == "fano" || id == "s7")
        return contains_fano(g);
    return find_embedding(g, named(id), budget);
}

} // namespace hyperchrom
