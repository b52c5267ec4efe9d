#include "hyperchrom/coloring.hpp"

#include <algorithm>
#include <unordered_map>

namespace hyperchrom {

Coloring::Coloring(std::vector<std::uint32_t> assignment)
{
    std::unordered_map<std::uint32_t, std::uint32_t> renumber;
    for (auto& c : assignment) {
        auto [it, fresh] = renumber.emplace(c, static_cast<std::uint32_t>(renumber.size()));
        c = it->second;
    }
    assignment_ = std::move(assignment);
    color_count_ = renumber.size();
}

std::vector<VertexSet> Coloring::classes() const
{
    std::vector<VertexSet> out(color_count_);
    for (std::size_t v = 0; v < assignment_.size(); ++v)
        out[assignment_[v]].push_back(static_cast<Vertex>(v));
    return out;
}

namespace {

bool weak_check(const Hypergraph& h, const Coloring& c, bool skip_singletons)
{
    if (c.size() != h.vertex_count())
        throw Error(ErrorKind::PartialColoring,
            "coloring covers " + std::to_string(c.size()) + " of " + std::to_string(h.vertex_count()) + " vertices");
    for (const auto& e : h.edges()) {
        if (e.size() == 1 && skip_singletons)
            continue;
        bool mono = std::all_of(e.begin(), e.end(), [&](Vertex v) { return c[v] == c[e[0]]; });
        if (mono)
            return false;
    }
    return true;
}

// Backtracking k-colorability. Each edge tracks how many of its vertices are
// colored and whether those share one color; an edge with a single uncolored
// vertex and a common color forbids that color at the last vertex.
class Solver {
public:
    Solver(const Hypergraph& h, std::size_t k, std::uint64_t max_nodes)
        : h_(h), k_(k), max_nodes_(max_nodes), n_(h.vertex_count()),
          color_(n_, kNone), forbid_(n_ * k, 0), available_(n_, static_cast<std::uint32_t>(k)),
          count_(h.edge_count(), 0), mono_(h.edge_count(), kNone)
    {
    }

    std::optional<Coloring> run()
    {
        if (n_ == 0)
            return Coloring{};
        if (k_ == 0)
            return std::nullopt;
        for (const auto& e : h_.edges())
            if (e.size() == 1)
                return std::nullopt;
        if (!search(0, 0))
            return std::nullopt;
        return Coloring(std::vector<std::uint32_t>(color_.begin(), color_.end()));
    }

private:
    static constexpr std::int32_t kNone = -1;
    static constexpr std::int32_t kMixed = -2;

    struct Undo {
        enum Kind : std::uint8_t { EdgeState, Forbid } kind;
        std::uint32_t index;
        std::int32_t old_mono;
        std::uint32_t color;
    };

    bool search(std::size_t depth, std::size_t used)
    {
        if (depth == n_)
            return true;
        if (++nodes_ > max_nodes_)
            throw Error(ErrorKind::SearchCapExceeded, "coloring search exceeded " + std::to_string(max_nodes_) + " nodes");
        Vertex v = pick(used);
        std::size_t limit = std::min(k_, used + 1);
        for (std::uint32_t c = 0; c < limit; ++c) {
            if (forbid_[v * k_ + c])
                continue;
            std::size_t mark = trail_.size();
            bool ok = assign(v, c);
            if (ok && search(depth + 1, std::max<std::size_t>(used, c + 1)))
                return true;
            undo(v, mark);
        }
        return false;
    }

    Vertex pick(std::size_t used) const
    {
        std::size_t limit = std::min(k_, used + 1);
        Vertex best = 0;
        std::size_t best_avail = SIZE_MAX;
        std::size_t best_deg = 0;
        for (Vertex v = 0; v < n_; ++v) {
            if (color_[v] != kNone)
                continue;
            std::size_t avail = 0;
            for (std::size_t c = 0; c < limit; ++c)
                avail += forbid_[v * k_ + c] == 0;
            std::size_t deg = h_.degree(v);
            if (avail < best_avail || (avail == best_avail && deg > best_deg)) {
                best = v;
                best_avail = avail;
                best_deg = deg;
            }
        }
        return best;
    }

    bool assign(Vertex v, std::uint32_t c)
    {
        color_[v] = static_cast<std::int32_t>(c);
        bool ok = true;
        for (auto ei : h_.incident(v)) {
            const auto& e = h_.edge(ei);
            trail_.push_back({Undo::EdgeState, ei, mono_[ei], 0});
            ++count_[ei];
            std::int32_t& m = mono_[ei];
            if (m == kNone)
                m = static_cast<std::int32_t>(c);
            else if (m != static_cast<std::int32_t>(c))
                m = kMixed;
            if (m < 0)
                continue;
            if (count_[ei] == e.size()) {
                ok = false;
            } else if (count_[ei] + 1 == e.size()) {
                for (Vertex u : e) {
                    if (color_[u] != kNone)
                        continue;
                    auto& f = forbid_[u * k_ + static_cast<std::size_t>(m)];
                    if (f++ == 0 && --available_[u] == 0)
                        ok = false;
                    trail_.push_back({Undo::Forbid, u, 0, static_cast<std::uint32_t>(m)});
                    break;
                }
            }
        }
        return ok;
    }

    void undo(Vertex v, std::size_t mark)
    {
        while (trail_.size() > mark) {
            Undo u = trail_.back();
            trail_.pop_back();
            if (u.kind == Undo::EdgeState) {
                --count_[u.index];
                mono_[u.index] = u.old_mono;
            } else if (--forbid_[u.index * k_ + u.color] == 0) {
                ++available_[u.index];
            }
        }
        color_[v] = kNone;
    }

    const Hypergraph& h_;
    std::size_t k_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    std::size_t n_;
    std::vector<std::int32_t> color_;
    std::vector<std::uint32_t> forbid_;
    std::vector<std::uint32_t> available_;
    std::vector<std::uint32_t> count_;
    std::vector<std::int32_t> mono_;
    std::vector<Undo> trail_;
};

void check_budget(const Hypergraph& h, const SearchBudget& budget)
{
    if (h.vertex_count() > budget.max_vertices && h.edge_count() > budget.max_edges)
        throw Error(ErrorKind::SearchCapExceeded,
            "instance has " + std::to_string(h.vertex_count()) + " vertices and " + std::to_string(h.edge_count())
                + " edges, over both budget limits");
}

} // namespace

bool is_weak_coloring(const Hypergraph& h, const Coloring& c) { return weak_check(h, c, false); }

bool is_weak_coloring_ignoring_singletons(const Hypergraph& h, const Coloring& c) { return weak_check(h, c, true); }

std::optional<Coloring> find_coloring(const Hypergraph& h, std::size_t k, const SearchBudget& budget)
{
    check_budget(h, budget);
    auto c = Solver(h, k, budget.max_nodes).run();
    if (c && !is_weak_coloring(h, *c))
        throw Error(ErrorKind::InternalInvariant, "solver produced an improper coloring");
    return c;
}

ChromaticResult chromatic_number(const Hypergraph& h, std::size_t limit, const SearchBudget& budget)
{
    ChromaticResult out;
    for (std::size_t k = h.vertex_count() == 0 ? 0 : 1; k <= limit; ++k) {
        if (auto c = find_coloring(h, k, budget)) {
            out.chi = k;
            out.witness = std::move(*c);
            return out;
        }
        out.refuted.push_back(k);
    }
    throw Error(ErrorKind::NotWithinLimit, "no proper coloring with at most " + std::to_string(limit) + " colors");
}

std::optional<std::vector<VertexSet>> is_s_partite(const Hypergraph& h, std::size_t s, const SearchBudget& budget)
{
    auto adj = cooccurrence_graph(h);
    std::vector<Edge> pairs;
    for (Vertex v = 0; v < adj.size(); ++v)
        for (Vertex u : adj[v])
            if (v < u)
                pairs.push_back({v, u});
    Hypergraph g(h.vertex_count(), std::move(pairs));
    auto c = find_coloring(g, s, budget);
    if (!c)
        return std::nullopt;
    auto parts = c->classes();
    for (const auto& p : parts)
        if (!is_strongly_independent(h, p))
            throw Error(ErrorKind::InternalInvariant, "partite search produced a non-strongly-independent part");
    return parts;
}

} // namespace hyperchrom
