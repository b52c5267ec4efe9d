#include "hyperchrom/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace hyperchrom {

Hypergraph::Hypergraph(std::size_t n, std::vector<Edge> edges)
    : n_(n)
{
    for (auto& e : edges) {
        if (e.empty())
            throw Error(ErrorKind::EmptyEdge, "hypergraph edges must be nonempty");
        std::sort(e.begin(), e.end());
        e.erase(std::unique(e.begin(), e.end()), e.end());
        if (e.back() >= n)
            throw Error(ErrorKind::VertexOutOfRange,
                "vertex " + std::to_string(e.back()) + " >= n = " + std::to_string(n));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    inc_offsets_.assign(n_ + 1, 0);
    max_size_ = 0;
    min_size_ = edges_.empty() ? 0 : edges_.front().size();
    for (const auto& e : edges_) {
        max_size_ = std::max(max_size_, e.size());
        min_size_ = std::min(min_size_, e.size());
        for (Vertex v : e)
            ++inc_offsets_[v + 1];
    }
    std::partial_sum(inc_offsets_.begin(), inc_offsets_.end(), inc_offsets_.begin());
    inc_edges_.resize(inc_offsets_.back());
    std::vector<std::uint32_t> fill(inc_offsets_.begin(), inc_offsets_.end() - 1);
    for (std::uint32_t i = 0; i < edges_.size(); ++i)
        for (Vertex v : edges_[i])
            inc_edges_[fill[v]++] = i;
}

std::optional<std::size_t> Hypergraph::uniformity() const noexcept
{
    if (edges_.empty())
        return 0;
    if (max_size_ != min_size_)
        return std::nullopt;
    return max_size_;
}

bool Hypergraph::is_uniform(std::size_t r) const noexcept
{
    return edges_.empty() || (max_size_ == r && min_size_ == r);
}

std::size_t Hypergraph::require_uniform(std::size_t fallback) const
{
    auto u = uniformity();
    if (!u)
        throw Error(ErrorKind::NonUniform, "operation requires a uniform hypergraph");
    return *u == 0 ? fallback : *u;
}

std::span<const std::uint32_t> Hypergraph::incident(Vertex v) const
{
    if (v >= n_)
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v));
    return {inc_edges_.data() + inc_offsets_[v], inc_offsets_[v + 1] - inc_offsets_[v]};
}

std::optional<std::size_t> Hypergraph::find_edge(std::span<const Vertex> sorted_edge) const
{
    auto less = [](const Edge& a, std::span<const Vertex> b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    auto it = std::lower_bound(edges_.begin(), edges_.end(), sorted_edge, less);
    if (it != edges_.end() && std::equal(it->begin(), it->end(), sorted_edge.begin(), sorted_edge.end()))
        return static_cast<std::size_t>(it - edges_.begin());
    return std::nullopt;
}

bool Hypergraph::has_edge(std::span<const Vertex> sorted_edge) const
{
    return find_edge(sorted_edge).has_value();
}

VertexSet normalize_set(VertexSet s, std::size_t n)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() >= n)
        throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(s.back()) + " >= n = " + std::to_string(n));
    return s;
}

namespace {

std::vector<char> membership(const VertexSet& s, std::size_t n)
{
    std::vector<char> in(n, 0);
    for (Vertex v : s)
        in[v] = 1;
    return in;
}

} // namespace

InducedHypergraph induced(const Hypergraph& h, const VertexSet& subset)
{
    auto s = normalize_set(subset, h.vertex_count());
    std::vector<std::int64_t> local(h.vertex_count(), -1);
    for (std::size_t i = 0; i < s.size(); ++i)
        local[s[i]] = static_cast<std::int64_t>(i);
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return local[v] >= 0; })) {
            Edge le;
            le.reserve(e.size());
            for (Vertex v : e)
                le.push_back(static_cast<Vertex>(local[v]));
            edges.push_back(std::move(le));
        }
    }
    return {Hypergraph(s.size(), std::move(edges)), s};
}

Hypergraph restriction(const Hypergraph& h, const VertexSet& y)
{
    auto in = membership(normalize_set(y, h.vertex_count()), h.vertex_count());
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        Edge cut;
        for (Vertex v : e)
            if (in[v])
                cut.push_back(v);
        if (!cut.empty())
            edges.push_back(std::move(cut));
    }
    return Hypergraph(h.vertex_count(), std::move(edges));
}

std::vector<RestrictionComponent> components_of_restriction(const Hypergraph& h, const VertexSet& y)
{
    auto ys = normalize_set(y, h.vertex_count());
    Hypergraph r = restriction(h, ys);

    std::vector<Vertex> parent(h.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : r.edges())
        for (std::size_t i = 1; i < e.size(); ++i) {
            Vertex a = find(e[0]), b = find(e[i]);
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }

    std::vector<std::int64_t> slot(h.vertex_count(), -1);
    std::vector<RestrictionComponent> out;
    for (Vertex v : ys) {
        Vertex root = find(v);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::int64_t>(out.size());
            out.emplace_back();
        }
        out[static_cast<std::size_t>(slot[root])].vertices.push_back(v);
    }
    for (const auto& e : r.edges())
        out[static_cast<std::size_t>(slot[find(e[0])])].edges.push_back(e);
    return out;
}

bool is_independent(const Hypergraph& h, const VertexSet& s)
{
    auto in = membership(normalize_set(s, h.vertex_count()), h.vertex_count());
    for (const auto& e : h.edges())
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v] != 0; }))
            return false;
    return true;
}

bool is_strongly_independent(const Hypergraph& h, const VertexSet& s)
{
    auto in = membership(normalize_set(s, h.vertex_count()), h.vertex_count());
    for (const auto& e : h.edges()) {
        int hits = 0;
        for (Vertex v : e)
            hits += in[v];
        if (hits >= 2)
            return false;
    }
    return true;
}

std::vector<std::vector<Vertex>> cooccurrence_graph(const Hypergraph& h)
{
    std::vector<std::vector<Vertex>> adj(h.vertex_count());
    for (const auto& e : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                adj[e[i]].push_back(e[j]);
                adj[e[j]].push_back(e[i]);
            }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    return adj;
}

namespace {

struct MaxIndependent {
    const std::vector<std::uint64_t>& conflict;
    std::uint64_t best_set = 0;
    int best_size = -1;

    void search(std::uint64_t chosen, int chosen_size, std::uint64_t candidates)
    {
        if (candidates == 0) {
            if (chosen_size > best_size) {
                best_size = chosen_size;
                best_set = chosen;
            }
            return;
        }
        if (chosen_size + std::popcount(candidates) <= best_size)
            return;
        int v = std::countr_zero(candidates);
        std::uint64_t bit = std::uint64_t{1} << v;
        search(chosen | bit, chosen_size + 1, candidates & ~bit & ~conflict[static_cast<std::size_t>(v)]);
        search(chosen, chosen_size, candidates & ~bit);
    }
};

} // namespace

StrongIndependence strong_independence_number(const Hypergraph& h, std::size_t cap)
{
    const std::size_t n = h.vertex_count();
    if (n > cap || n > 64)
        throw Error(ErrorKind::SearchCapExceeded,
            "strong independence search limited to " + std::to_string(std::min<std::size_t>(cap, 64)) + " vertices");
    auto adj = cooccurrence_graph(h);
    std::vector<std::uint64_t> conflict(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        for (Vertex u : adj[v])
            conflict[v] |= std::uint64_t{1} << u;
    MaxIndependent mis{conflict};
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    mis.search(0, 0, all);
    StrongIndependence out;
    out.size = static_cast<std::size_t>(std::max(mis.best_size, 0));
    for (std::size_t v = 0; v < n; ++v)
        if (mis.best_set >> v & 1)
            out.witness.push_back(static_cast<Vertex>(v));
    return out;
}

std::size_t degree(const Hypergraph& h, Vertex v) { return h.degree(v); }

std::size_t k_degree(const Hypergraph& h, std::span<const Vertex> tuple)
{
    std::size_t r = h.require_uniform(tuple.size() + 1);
    VertexSet t(tuple.begin(), tuple.end());
    std::sort(t.begin(), t.end());
    if (std::adjacent_find(t.begin(), t.end()) != t.end())
        throw Error(ErrorKind::DuplicateVertexInTuple, "k-degree tuple repeats a vertex");
    if (t.size() >= r)
        throw Error(ErrorKind::BadArity, "k-degree needs |tuple| < r");
    if (t.empty())
        return h.edge_count();
    Vertex pivot = t.front();
    for (Vertex v : t)
        if (h.degree(v) < h.degree(pivot))
            pivot = v;
    std::size_t count = 0;
    for (auto ei : h.incident(pivot)) {
        const auto& e = h.edge(ei);
        if (std::includes(e.begin(), e.end(), t.begin(), t.end()))
            ++count;
    }
    return count;
}

DegreeProfile min_degree(const Hypergraph& h)
{
    DegreeProfile p;
    const std::size_t n = h.vertex_count();
    p.degrees.resize(n);
    for (Vertex v = 0; v < n; ++v)
        p.degrees[v] = h.degree(v);
    p.min_degree = n == 0 ? 0 : *std::min_element(p.degrees.begin(), p.degrees.end());
    std::size_t r = std::max<std::size_t>(h.max_edge_size(), 1);
    BigInt denom = n == 0 ? BigInt(0) : binomial(n, r - 1);
    p.ratio = denom == 0 ? Rational(0) : Rational(BigInt(static_cast<unsigned long>(p.min_degree)), denom);
    p.ratio.canonicalize();
    return p;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const VertexSet&)>& fn)
{
    if (k > n)
        return;
    VertexSet cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        fn(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            return;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
}

DegreeProfile min_degree(const Hypergraph& h, std::size_t k)
{
    DegreeProfile p = min_degree(h);
    std::size_t r = h.require_uniform(k + 1);
    if (k == 0 || k >= r)
        throw Error(ErrorKind::BadArity, "k-degree requires 0 < k < r");
    const std::size_t n = h.vertex_count();
    std::optional<std::size_t> best;
    for_each_subset(n, k, [&](const VertexSet& t) {
        std::size_t d = k_degree(h, t);
        if (!best || d < *best)
            best = d;
    });
    p.k = k;
    p.min_k_degree = BigInt(static_cast<unsigned long>(best.value_or(0)));
    BigInt denom = (k == r - 1) ? BigInt(static_cast<unsigned long>(n)) : binomial(n - k, r - k);
    Rational q = denom == 0 ? Rational(0) : Rational(*p.min_k_degree, denom);
    q.canonicalize();
    p.k_ratio = q;
    return p;
}

Hypergraph blow_up(const Hypergraph& h, std::size_t t)
{
    if (t == 0)
        throw Error(ErrorKind::BadArity, "blow-up factor must be >= 1");
    std::vector<Edge> edges;
    for (const auto& e : h.edges()) {
        std::vector<std::size_t> idx(e.size(), 0);
        while (true) {
            Edge copy(e.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                copy[i] = static_cast<Vertex>(e[i] * t + idx[i]);
            edges.push_back(std::move(copy));
            std::size_t i = 0;
            while (i < e.size() && ++idx[i] == t)
                idx[i++] = 0;
            if (i == e.size())
                break;
        }
    }
    return Hypergraph(h.vertex_count() * t, std::move(edges));
}

} // namespace hyperchrom
