#include "hyperchrom/structure.hpp"

#include "hyperchrom/coloring.hpp"
#include "hyperchrom/errors.hpp"
#include "hyperchrom/generators.hpp"
#include "hyperchrom/patterns.hpp"

#include <algorithm>
#include <numeric>

namespace hyperchrom {

namespace {

std::size_t check_arity(const Hypergraph& h, std::size_t r)
{
    if (r == 0)
        throw Error(ErrorKind::BadArity, "r must be positive");
    std::size_t u = h.require_uniform(r);
    if (u != r)
        throw Error(ErrorKind::NonUniform, "hypergraph is " + std::to_string(u) + "-uniform, expected " + std::to_string(r));
    return u;
}

std::vector<char> membership(std::size_t n, const VertexSet& s)
{
    std::vector<char> in(n, 0);
    for (Vertex v : s)
        in[v] = 1;
    return in;
}

struct NearSearch {
    const Hypergraph& h;
    std::size_t r;
    const NearSearchOptions& opts;
    const std::function<bool(const NearPartition&)>& visit;

    std::vector<int> part;
    std::vector<std::vector<std::uint8_t>> cnt; // per edge, per part
    std::vector<std::uint8_t> assigned;
    std::vector<char> forced;
    std::uint64_t nodes = 0;

    bool edge_ok(std::size_t e) const
    {
        const auto& c = cnt[e];
        if (c[0] == assigned[e])
            return true;
        return std::all_of(c.begin(), c.end(), [](std::uint8_t k) { return k <= 1; });
    }

    // Special edges so far: fully assigned edges lying in part 0. They must be
    // disjoint; returns the count or -1.
    long specials() const
    {
        std::vector<char> used(h.vertex_count(), 0);
        long count = 0;
        for (std::size_t e = 0; e < h.edge_count(); ++e) {
            if (assigned[e] != h.edge(e).size() || cnt[e][0] != assigned[e])
                continue;
            for (Vertex v : h.edge(e)) {
                if (used[v])
                    return -1;
                used[v] = 1;
            }
            ++count;
        }
        return count;
    }

    bool place(Vertex v, int p)
    {
        part[v] = p;
        bool ok = true;
        for (auto e : h.incident(v)) {
            ++cnt[e][static_cast<std::size_t>(p)];
            ++assigned[e];
            ok = ok && edge_ok(e);
        }
        return ok;
    }

    void unplace(Vertex v)
    {
        for (auto e : h.incident(v)) {
            --cnt[e][static_cast<std::size_t>(part[v])];
            --assigned[e];
        }
        part[v] = -1;
    }

    bool emit()
    {
        NearPartition p;
        p.parts.assign(r, {});
        for (Vertex v = 0; v < h.vertex_count(); ++v)
            p.parts[static_cast<std::size_t>(part[v])].push_back(v);
        for (const auto& e : h.edges())
            if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return part[v] == 0; }))
                p.special.push_back(e);
        if (p.special.size() < opts.min_special)
            return false;
        if (opts.forced_special && std::find(p.special.begin(), p.special.end(), *opts.forced_special) == p.special.end())
            return false;
        p.mono = p.special.size() == 1;
        return visit(p);
    }

    bool go(Vertex v, int max_used)
    {
        if (++nodes > opts.max_nodes)
            throw Error(ErrorKind::SearchCapExceeded, "near-partition search exceeded " + std::to_string(opts.max_nodes) + " nodes");
        if (v == h.vertex_count())
            return emit();
        std::vector<int> choices;
        if (forced[v]) {
            choices.push_back(0);
        } else {
            for (int p = 1; p <= std::min<int>(static_cast<int>(r) - 1, max_used + 1); ++p)
                choices.push_back(p);
            choices.push_back(0);
        }
        for (int p : choices) {
            bool ok = place(v, p);
            if (ok) {
                long s = specials();
                ok = s >= 0 && static_cast<std::size_t>(s) <= opts.max_special;
            }
            if (ok && go(v + 1, std::max(max_used, p))) {
                unplace(v);
                return true;
            }
            unplace(v);
        }
        return false;
    }
};

} // namespace

bool enumerate_near_partitions(const Hypergraph& h, std::size_t r, const NearSearchOptions& opts,
    const std::function<bool(const NearPartition&)>& visit)
{
    check_arity(h, r);
    NearSearch s{h, r, opts, visit, {}, {}, {}, {}, 0};
    s.part.assign(h.vertex_count(), -1);
    s.cnt.assign(h.edge_count(), std::vector<std::uint8_t>(r, 0));
    s.assigned.assign(h.edge_count(), 0);
    s.forced.assign(h.vertex_count(), 0);
    if (opts.forced_special) {
        if (!h.has_edge(*opts.forced_special))
            throw Error(ErrorKind::BadArity, "forced special edge is not an edge");
        for (Vertex v : *opts.forced_special)
            s.forced[v] = 1;
    }
    return s.go(0, 0);
}

std::optional<NearPartition> near_r_partition(const Hypergraph& h, std::size_t r, std::uint64_t max_nodes)
{
    check_arity(h, r);
    if (auto parts = is_s_partite(h, r)) {
        NearPartition p;
        p.parts.assign(r, {});
        // Colour classes become V_2.., so V_1 is empty unless every part is used.
        std::size_t k = parts->size();
        for (std::size_t i = 0; i < k; ++i)
            p.parts[r - k + i] = (*parts)[i];
        return p;
    }
    std::optional<NearPartition> found;
    NearSearchOptions opts;
    opts.max_nodes = max_nodes;
    for (std::size_t k = 1; k <= h.edge_count() && !found; ++k) {
        opts.min_special = opts.max_special = k;
        enumerate_near_partitions(h, r, opts, [&](const NearPartition& p) {
            found = p;
            return true;
        });
    }
    if (found) {
        std::string why = check_near_partition(h, r, *found);
        if (!why.empty())
            throw Error(ErrorKind::InternalInvariant, "near partition failed its check: " + why);
    }
    return found;
}

std::string check_near_partition(const Hypergraph& h, std::size_t r, const NearPartition& p)
{
    if (p.parts.size() != r)
        return "expected " + std::to_string(r) + " parts";
    std::vector<int> part(h.vertex_count(), -1);
    for (std::size_t i = 0; i < r; ++i)
        for (Vertex v : p.parts[i]) {
            if (v >= part.size() || part[v] >= 0)
                return "parts do not partition V(H)";
            part[v] = static_cast<int>(i);
        }
    if (std::any_of(part.begin(), part.end(), [](int x) { return x < 0; }))
        return "parts do not cover V(H)";
    std::vector<Edge> inside;
    for (const auto& e : h.edges()) {
        std::vector<int> seen(r, 0);
        for (Vertex v : e)
            ++seen[static_cast<std::size_t>(part[v])];
        if (seen[0] == static_cast<int>(e.size())) {
            inside.push_back(e);
            continue;
        }
        if (e.size() != r || std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
            return "an edge neither crosses nor lies in V_1";
    }
    std::vector<char> used(h.vertex_count(), 0);
    for (const auto& e : inside)
        for (Vertex v : e) {
            if (used[v])
                return "H[V_1] is not a partial matching";
            used[v] = 1;
        }
    auto sorted = p.special;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != inside)
        return "special edges differ from the edges of H[V_1]";
    if (p.mono != (inside.size() == 1))
        return "mono flag is wrong";
    return {};
}

namespace {

// ext(C) for every component C of H|_Y: x in X with E ∪ {x} ∈ E(H) for some E ∈ C.
std::vector<VertexSet> extensions(const Hypergraph& h, const VertexSet& x, const VertexSet& y)
{
    auto comps = components_of_restriction(h, y);
    std::vector<long> comp_of(h.vertex_count(), -1);
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (Vertex v : comps[i].vertices)
            comp_of[v] = static_cast<long>(i);
    auto in_x = membership(h.vertex_count(), x);
    auto in_y = membership(h.vertex_count(), y);
    std::vector<VertexSet> ext(comps.size());
    for (const auto& e : h.edges()) {
        std::vector<Vertex> xs;
        bool rest_in_y = true;
        for (Vertex v : e) {
            if (in_x[v])
                xs.push_back(v);
            else if (!in_y[v])
                rest_in_y = false;
        }
        // E ∪ {x} with E ⊆ Y nonempty; E is then A ∩ Y, an edge of H|_Y.
        if (xs.size() != 1 || !rest_in_y || e.size() < 2)
            continue;
        Vertex other = e[0] == xs[0] ? e[1] : e[0];
        ext[static_cast<std::size_t>(comp_of[other])].push_back(xs[0]);
    }
    for (auto& s : ext) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    return ext;
}

void require_disjoint(const Hypergraph& h, const VertexSet& x, const VertexSet& y)
{
    auto in_x = membership(h.vertex_count(), x);
    for (Vertex v : y)
        if (in_x[v])
            throw Error(ErrorKind::BadArity, "X and Y must be disjoint");
}

} // namespace

std::optional<std::vector<VertexSet>> is_partite_extendible(const Hypergraph& h, const VertexSet& x_in, const VertexSet& y_in,
    std::uint64_t max_nodes)
{
    std::size_t r = h.require_uniform(2);
    auto x = normalize_set(x_in, h.vertex_count());
    auto y = normalize_set(y_in, h.vertex_count());
    require_disjoint(h, x, y);
    if (x.empty())
        return std::vector<VertexSet>(r);

    // Vertices of X forced together by a shared component.
    std::vector<Vertex> parent(h.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Vertex v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& s : extensions(h, x, y))
        for (std::size_t i = 1; i < s.size(); ++i)
            parent[find(s[i])] = find(s[0]);
    std::vector<VertexSet> groups;
    std::vector<long> group_of(h.vertex_count(), -1);
    for (Vertex v : x) {
        Vertex root = find(v);
        if (group_of[root] < 0) {
            group_of[root] = static_cast<long>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[root])].push_back(v);
        group_of[v] = group_of[root];
    }
    for (const auto& g : groups)
        if (!is_strongly_independent(h, g))
            return std::nullopt;

    // Groups sharing an edge of H must land in different parts.
    std::vector<std::vector<char>> clash(groups.size(), std::vector<char>(groups.size(), 0));
    for (const auto& e : h.edges())
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                long a = group_of[e[i]], b = group_of[e[j]];
                if (a >= 0 && b >= 0 && a != b)
                    clash[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = clash[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] = 1;
            }
    std::vector<int> colour(groups.size(), -1);
    std::uint64_t nodes = 0;
    std::function<bool(std::size_t, int)> go = [&](std::size_t g, int max_used) {
        if (++nodes > max_nodes)
            throw Error(ErrorKind::SearchCapExceeded, "partite-extension search exceeded " + std::to_string(max_nodes) + " nodes");
        if (g == groups.size())
            return true;
        for (int c = 0; c <= std::min<int>(static_cast<int>(r) - 1, max_used + 1); ++c) {
            bool ok = true;
            for (std::size_t o = 0; o < g && ok; ++o)
                ok = !(clash[g][o] && colour[o] == c);
            if (!ok)
                continue;
            colour[g] = c;
            if (go(g + 1, std::max(max_used, c)))
                return true;
        }
        colour[g] = -1;
        return false;
    };
    if (!go(0, -1))
        return std::nullopt;
    std::vector<VertexSet> parts(r);
    for (std::size_t g = 0; g < groups.size(); ++g)
        for (Vertex v : groups[g])
            parts[static_cast<std::size_t>(colour[g])].push_back(v);
    for (auto& p : parts)
        std::sort(p.begin(), p.end());
    std::string why = check_partite_extension(h, x, y, parts);
    if (!why.empty())
        throw Error(ErrorKind::InternalInvariant, "partite extension failed its check: " + why);
    return parts;
}

std::string check_partite_extension(const Hypergraph& h, const VertexSet& x_in, const VertexSet& y_in,
    const std::vector<VertexSet>& parts)
{
    auto x = normalize_set(x_in, h.vertex_count());
    auto y = normalize_set(y_in, h.vertex_count());
    std::size_t r = h.require_uniform(2);
    if (parts.size() != r)
        return "expected " + std::to_string(r) + " parts";
    std::vector<long> part(h.vertex_count(), -1);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!is_strongly_independent(h, parts[i]))
            return "part " + std::to_string(i + 1) + " is not strongly independent";
        for (Vertex v : parts[i]) {
            if (v >= part.size() || part[v] >= 0)
                return "parts overlap";
            part[v] = static_cast<long>(i);
        }
    }
    for (Vertex v : x)
        if (part[v] < 0)
            return "vertex " + std::to_string(v) + " of X is in no part";
    if (std::count_if(part.begin(), part.end(), [](long p) { return p >= 0; }) != static_cast<long>(x.size()))
        return "parts contain vertices outside X";
    // Direct reading of the definition: look at every pair of extending edges.
    for (const auto& c : components_of_restriction(h, y)) {
        std::vector<Vertex> ext;
        for (const auto& e : c.edges)
            for (Vertex v : x) {
                Edge with = e;
                with.push_back(v);
                std::sort(with.begin(), with.end());
                if (with.size() == r && h.has_edge(with))
                    ext.push_back(v);
            }
        for (std::size_t i = 1; i < ext.size(); ++i)
            if (part[ext[i]] != part[ext[0]])
                return "a component of H|_Y extends into two parts";
    }
    return {};
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes:
        return "yes";
    case Verdict::No:
        return "no";
    case Verdict::Undecidable:
        return "UNDECIDABLE-HERE";
    }
    return "?";
}

CriticalReport critical_syntactic(const Hypergraph& h)
{
    CriticalReport rep;
    rep.r = h.require_uniform(0);
    if (rep.r == 0)
        return rep;
    for (const auto& e : h.edges()) {
        NearSearchOptions opts;
        opts.min_special = opts.max_special = 1;
        opts.forced_special = e;
        std::optional<NearPartition> found;
        enumerate_near_partitions(h, rep.r, opts, [&](const NearPartition& p) {
            found = p;
            return true;
        });
        if (!found)
            continue;
        std::size_t ones = static_cast<std::size_t>(std::count_if(e.begin(), e.end(), [&](Vertex v) { return h.degree(v) == 1; }));
        bool good = ones + 2 >= rep.r;
        if (rep.mono == Verdict::No || (good && rep.degree_one == Verdict::No)) {
            rep.partition = found;
            rep.degree_one_count = ones;
        }
        rep.mono = Verdict::Yes;
        if (good) {
            rep.degree_one = Verdict::Yes;
            break;
        }
    }
    std::size_t m = h.edge_count();
    if (rep.r >= 3 && m >= 5 && m % 2 == 1) {
        auto c = cycle(rep.r, m);
        if (c.vertex_count() == h.vertex_count() && find_embedding(h, c)) {
            if (rep.r <= 4)
                rep.reference = "C^" + std::to_string(rep.r) + "_" + std::to_string(m) + " is critical (reference result for r = 3, 4)";
            else
                rep.reference = "C^" + std::to_string(rep.r) + "_" + std::to_string(m) +
                    " is not critical: pi(C^r_{2k+1}) > r!/r^r for r >= 5 (reference result)";
        }
    }
    return rep;
}

Theorem1Gate theorem1_gate(const Hypergraph& h, std::size_t max_partitions)
{
    Theorem1Gate gate;
    std::size_t r = h.require_uniform(0);
    if (r == 0)
        throw Error(ErrorKind::BadArity, "gate needs at least one edge");
    auto test = [&](const NearPartition& p) {
        ++gate.partitions_tried;
        const auto& v1 = p.parts[0];
        VertexSet rest;
        for (std::size_t i = 1; i < r; ++i)
            rest.insert(rest.end(), p.parts[i].begin(), p.parts[i].end());
        std::sort(rest.begin(), rest.end());
        // Components of H[V_1]: the special edges and the remaining single vertices.
        std::vector<VertexSet> comps;
        std::vector<char> covered(h.vertex_count(), 0);
        for (const auto& e : p.special) {
            comps.push_back(e);
            for (Vertex v : e)
                covered[v] = 1;
        }
        for (Vertex v : v1)
            if (!covered[v])
                comps.push_back({v});
        std::vector<ComponentCheck> checks;
        bool all = true;
        for (const auto& c : comps) {
            checks.push_back({c, is_partite_extendible(h, c, rest)});
            all = all && checks.back().extension.has_value();
        }
        if (all || !gate.partition) {
            gate.partition = p;
            gate.components = std::move(checks);
        }
        if (all)
            gate.applies = true;
        return all || gate.partitions_tried >= max_partitions;
    };
    NearSearchOptions opts;
    for (std::size_t k = 0; k <= h.edge_count() && !gate.applies && gate.partitions_tried < max_partitions; ++k) {
        opts.min_special = opts.max_special = k;
        enumerate_near_partitions(h, r, opts, test);
    }
    return gate;
}

} // namespace hyperchrom
