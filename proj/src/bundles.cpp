#include "hyperchrom/bundles.hpp"

#include "hyperchrom/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

namespace hyperchrom {

struct FiberUniverse {
    std::size_t n = 0;
    std::size_t r = 0;
    std::vector<Edge> edges;                 // lexicographic
    std::vector<std::uint32_t> colex_to_lex;
    std::vector<std::vector<std::uint64_t>> choose;

    std::uint64_t colex(const Edge& e) const
    {
        std::uint64_t rank = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            rank += choose[e[i]][i + 1];
        return rank;
    }
};

namespace {

constexpr std::size_t kUniverseCap = std::size_t{1} << 22;

std::shared_ptr<const FiberUniverse> make_universe(std::size_t n, std::size_t r)
{
    BigInt total = binomial(n, r);
    if (!total.fits_ulong_p() || total.get_ui() > kUniverseCap)
        throw Error(ErrorKind::BudgetExceeded, "C(" + std::to_string(n) + ", " + std::to_string(r) + ") fiber edges exceed the budget");
    auto u = std::make_shared<FiberUniverse>();
    u->n = n;
    u->r = r;
    u->choose.assign(n + 1, std::vector<std::uint64_t>(r + 2, 0));
    for (std::size_t i = 0; i <= n; ++i) {
        u->choose[i][0] = 1;
        for (std::size_t j = 1; j <= std::min(i, r + 1); ++j)
            u->choose[i][j] = u->choose[i - 1][j - 1] + (j <= i - 1 ? u->choose[i - 1][j] : 0);
    }
    u->colex_to_lex.assign(total.get_ui(), 0);
    for_each_subset(n, r, [&](const VertexSet& s) {
        u->colex_to_lex[u->colex(s)] = static_cast<std::uint32_t>(u->edges.size());
        u->edges.push_back(s);
    });
    return u;
}

std::size_t count(const FiberSet& s) { return s.count(); }

Rational ratio(std::size_t num, std::size_t den)
{
    return frac(BigInt(static_cast<unsigned long>(num)), BigInt(static_cast<unsigned long>(den)));
}

std::vector<char> membership(std::size_t n, const VertexSet& x)
{
    std::vector<char> in(n, 0);
    for (Vertex v : x)
        in[v] = 1;
    return in;
}

// Base edges lying inside x.
std::vector<std::size_t> edges_within(const Hypergraph& b, const std::vector<char>& in)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < b.edge_count(); ++i) {
        const auto& e = b.edge(i);
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return in[v] != 0; }))
            out.push_back(i);
    }
    return out;
}

// Sections of all transversals, first edge varying slowest.
std::vector<FiberSet> transversal_sections(const FiberBundle& bundle, const std::vector<Edge>& edges, const FiberSet& start)
{
    std::vector<FiberSet> cur{start};
    for (const auto& e : edges) {
        std::vector<FiberSet> next;
        next.reserve(cur.size() * e.size());
        for (const auto& s : cur)
            for (Vertex x : e)
                next.push_back(s & bundle.fiber(x));
        cur = std::move(next);
    }
    return cur;
}

bool pairwise_disjoint(const std::vector<Edge>& edges, std::size_t n)
{
    std::vector<char> used(n, 0);
    for (const auto& e : edges)
        for (Vertex v : e) {
            if (v >= n || used[v])
                return false;
            used[v] = 1;
        }
    return true;
}

double log10q(const Rational& q) { return std::log10(to_double(q)); }

} // namespace

// ---------------------------------------------------------------- bundle

FiberBundle::FiberBundle(Hypergraph base, std::size_t fiber_size, std::size_t r_gamma, const std::vector<std::vector<Edge>>& gamma)
    : base_(std::move(base)), fiber_size_(fiber_size), r_gamma_(r_gamma)
{
    if (r_gamma == 0 || r_gamma > fiber_size)
        throw Error(ErrorKind::BadArity, "r_gamma must lie in 1..|F|");
    if (gamma.size() != base_.vertex_count())
        throw Error(ErrorKind::BadArity, "one fiber per base vertex is required");
    universe_ = make_universe(fiber_size, r_gamma);
    gamma_.assign(gamma.size(), FiberSet(universe_->edges.size()));
    for (std::size_t b = 0; b < gamma.size(); ++b)
        for (auto e : gamma[b]) {
            std::sort(e.begin(), e.end());
            gamma_[b].set(index_of(e));
        }
}

FiberBundle::FiberBundle(Hypergraph base, std::size_t fiber_size, std::size_t r_gamma, std::vector<FiberSet> gamma)
    : base_(std::move(base)), fiber_size_(fiber_size), r_gamma_(r_gamma), gamma_(std::move(gamma))
{
    if (r_gamma == 0 || r_gamma > fiber_size)
        throw Error(ErrorKind::BadArity, "r_gamma must lie in 1..|F|");
    if (gamma_.size() != base_.vertex_count())
        throw Error(ErrorKind::BadArity, "one fiber per base vertex is required");
    universe_ = make_universe(fiber_size, r_gamma);
    for (const auto& g : gamma_)
        if (g.size() != universe_->edges.size())
            throw Error(ErrorKind::BadArity, "fiber bitmap has the wrong length");
}

std::size_t FiberBundle::universe_size() const { return universe_ ? universe_->edges.size() : 0; }

const Edge& FiberBundle::universe_edge(std::size_t index) const { return universe_->edges.at(index); }

std::size_t FiberBundle::index_of(const Edge& e) const
{
    if (e.size() != r_gamma_)
        throw Error(ErrorKind::BadArity, "fiber edge of size " + std::to_string(e.size()) + ", expected " + std::to_string(r_gamma_));
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] >= fiber_size_)
            throw Error(ErrorKind::VertexOutOfRange, "fiber element " + std::to_string(e[i]) + " outside F");
        if (i > 0 && e[i] <= e[i - 1])
            throw Error(ErrorKind::BadArity, "fiber edge is not a sorted set");
    }
    return universe_->colex_to_lex[universe_->colex(e)];
}

std::vector<Edge> FiberBundle::edges_of(const FiberSet& s) const
{
    std::vector<Edge> out;
    for (auto i = s.find_first(); i != FiberSet::npos; i = s.find_next(i))
        out.push_back(universe_->edges[i]);
    return out;
}

FiberSet FiberBundle::full_set() const
{
    FiberSet s(universe_size());
    s.set();
    return s;
}

FiberBundle FiberBundle::with_base(Hypergraph base) const
{
    if (base.vertex_count() != base_.vertex_count())
        throw Error(ErrorKind::BadArity, "replacement base has a different vertex set");
    FiberBundle out = *this;
    out.base_ = std::move(base);
    return out;
}

FiberBundle neighborhood_bundle(const Hypergraph& g)
{
    std::size_t r = g.require_uniform(0);
    if (g.edge_count() > 0 && r < 2)
        throw Error(ErrorKind::NonUniform, "neighborhood bundle needs an r-uniform hypergraph with r >= 2");
    if (r == 0)
        r = 2;
    std::vector<std::vector<Edge>> gamma(g.vertex_count());
    for (const auto& e : g.edges())
        for (Vertex b : e) {
            Edge link;
            for (Vertex v : e)
                if (v != b)
                    link.push_back(v);
            gamma[b].push_back(std::move(link));
        }
    return FiberBundle(g, g.vertex_count(), r - 1, gamma);
}

RainbowPartition rainbow_partition(const Hypergraph& g, std::size_t threshold, std::uint64_t seed, std::size_t max_attempts)
{
    std::size_t r = g.require_uniform(0);
    if (r == 0)
        r = 1;
    std::mt19937_64 rng(seed);
    std::vector<Vertex> order(g.vertex_count());
    for (Vertex v = 0; v < order.size(); ++v)
        order[v] = v;
    RainbowPartition best;
    best.min_rainbow = 0;
    bool have = false;
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::uint32_t> part(g.vertex_count());
        RainbowPartition cur;
        cur.parts.assign(r, {});
        for (std::size_t i = 0; i < order.size(); ++i) {
            part[order[i]] = static_cast<std::uint32_t>(i % r);
            cur.parts[i % r].push_back(order[i]);
        }
        for (auto& p : cur.parts)
            std::sort(p.begin(), p.end());
        cur.rainbow_degree.assign(g.vertex_count(), 0);
        for (const auto& e : g.edges()) {
            std::vector<char> seen(r, 0);
            bool rainbow = true;
            for (Vertex v : e) {
                rainbow &= !seen[part[v]];
                seen[part[v]] = 1;
            }
            if (rainbow)
                for (Vertex v : e)
                    ++cur.rainbow_degree[v];
        }
        cur.min_rainbow = cur.rainbow_degree.empty() ? 0 : *std::min_element(cur.rainbow_degree.begin(), cur.rainbow_degree.end());
        cur.attempts = attempt;
        if (g.vertex_count() == 0 || cur.min_rainbow >= threshold)
            return cur;
        if (!have || cur.min_rainbow > best.min_rainbow) {
            best = cur;
            have = true;
        }
    }
    throw Error(ErrorKind::AttemptsExhausted, "best minimum rainbow degree " + std::to_string(best.min_rainbow) +
        " after " + std::to_string(max_attempts) + " attempts, threshold " + std::to_string(threshold));
}

FiberSet section(const FiberBundle& bundle, const VertexSet& x)
{
    FiberSet s = bundle.full_set();
    for (Vertex v : x) {
        if (v >= bundle.base().vertex_count())
            throw Error(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " outside the base");
        s &= bundle.fiber(v);
    }
    return s;
}

Hypergraph fiber_graph(const FiberBundle& bundle, const FiberSet& s)
{
    return Hypergraph(bundle.fiber_size(), bundle.edges_of(s));
}

bool set_contains(const FiberBundle& bundle, const FiberSet& s, const Hypergraph& h)
{
    if (h.edge_count() == 0)
        return h.vertex_count() <= bundle.fiber_size();
    if (h.max_edge_size() != bundle.r_gamma() || h.min_edge_size() != bundle.r_gamma())
        throw Error(ErrorKind::BadArity, "pattern must be r_gamma-uniform");
    if (h.edge_count() > count(s) || h.vertex_count() > bundle.fiber_size())
        return false;
    return find_embedding(fiber_graph(bundle, s), h).has_value();
}

bool audit_witness(const FiberBundle& bundle, const Hypergraph& h, const DimWitness& w)
{
    if (!pairwise_disjoint(w.edges, bundle.base().vertex_count()))
        return false;
    for (const auto& e : w.edges)
        if (!bundle.base().has_edge(e))
            return false;
    std::map<FiberSet, bool> cache;
    for (const auto& s : transversal_sections(bundle, w.edges, bundle.full_set())) {
        auto it = cache.find(s);
        if (it == cache.end())
            it = cache.emplace(s, set_contains(bundle, s, h)).first;
        if (!it->second)
            return false;
    }
    return true;
}

DimResult dim_h(const FiberBundle& bundle, const Hypergraph& h, std::size_t d_max, std::uint64_t max_nodes)
{
    const auto& b = bundle.base();
    DimResult best;
    std::map<FiberSet, bool> cache;
    auto contains = [&](const FiberSet& s) {
        auto it = cache.find(s);
        if (it == cache.end())
            it = cache.emplace(s, set_contains(bundle, s, h)).first;
        return it->second;
    };
    std::vector<char> used(b.vertex_count(), 0);
    std::vector<Edge> chosen;
    std::uint64_t nodes = 0;
    // Every partial transversal must already contain h: sections only
    // shrink as edges are added.
    std::function<bool(std::size_t, const std::vector<FiberSet>&)> grow = [&](std::size_t from, const std::vector<FiberSet>& sections) {
        if (chosen.size() > best.dim) {
            best.dim = chosen.size();
            best.witness = DimWitness{chosen};
        }
        if (chosen.size() >= d_max)
            return true;
        for (std::size_t i = from; i < b.edge_count(); ++i) {
            if (++nodes > max_nodes)
                throw Error(ErrorKind::SearchCapExceeded, "dimension search exceeded " + std::to_string(max_nodes) + " nodes");
            const auto& e = b.edge(i);
            if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return used[v] != 0; }))
                continue;
            std::vector<FiberSet> next;
            bool ok = true;
            for (const auto& s : sections) {
                for (Vertex x : e) {
                    next.push_back(s & bundle.fiber(x));
                    if (!contains(next.back())) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    break;
            }
            if (!ok)
                continue;
            for (Vertex v : e)
                used[v] = 1;
            chosen.push_back(e);
            bool done = grow(i + 1, next);
            chosen.pop_back();
            for (Vertex v : e)
                used[v] = 0;
            if (done)
                return true;
        }
        return false;
    };
    if (d_max > 0)
        grow(0, {bundle.full_set()});
    return best;
}

// ---------------------------------------------------------------- densities

Rational density(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s)
{
    std::size_t total = count(s);
    if (x.empty() || total == 0)
        return Rational(1);
    std::size_t least = total;
    for (Vertex v : x)
        least = std::min(least, count(bundle.fiber(v) & s));
    return ratio(least, total);
}

Rational partition_density(const FiberBundle& bundle, const BundlePartition& p)
{
    Rational least = 1;
    for (const auto& part : p)
        least = std::min(least, density(bundle, part.x, part.s));
    return least;
}

std::optional<std::size_t> partition_rank(const BundlePartition& p)
{
    std::optional<std::size_t> least;
    for (const auto& part : p) {
        std::size_t c = count(part.s);
        if (c > 0 && (!least || c < *least))
            least = c;
    }
    return least;
}

bool is_partial_coloring(const FiberBundle& bundle, const BundlePartition& p)
{
    for (const auto& part : p)
        if (part.s.none() && !is_independent(bundle.base(), part.x))
            return false;
    return true;
}

bool is_bundle_partition(const FiberBundle& bundle, const BundlePartition& p)
{
    std::vector<char> seen(bundle.base().vertex_count(), 0);
    FiberSet covered = bundle.empty_set();
    for (const auto& part : p) {
        for (Vertex v : part.x) {
            if (v >= seen.size() || seen[v])
                return false;
            seen[v] = 1;
        }
        if (part.s.size() != covered.size() || part.s.intersects(covered))
            return false;
        covered |= part.s;
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; }) && covered.all();
}

Rational min_section_density(const FiberBundle& bundle, const std::vector<Edge>& edges, const FiberSet& s)
{
    if (s.none())
        throw Error(ErrorKind::EmptyS, "minimum section density needs S nonempty");
    if (!pairwise_disjoint(edges, bundle.base().vertex_count()))
        throw Error(ErrorKind::EdgesOverlap, "edges must be pairwise disjoint");
    std::size_t least = count(s);
    for (const auto& sec : transversal_sections(bundle, edges, s))
        least = std::min(least, count(sec));
    return ratio(least, count(s));
}

// ---------------------------------------------------------------- parameters

RefineParams RefineParams::paper(const Rational& eps, std::size_t d, std::size_t r_b, Hypergraph h)
{
    RefineParams p;
    p.mode = RefineMode::PaperLiteral;
    p.eps = eps;
    p.d = d;
    p.r_b = r_b;
    p.h = std::move(h);
    if (eps <= 0 || eps >= 1 || d == 0 || r_b == 0)
        throw Error(ErrorKind::ParamViolation, "need 0 < eps < 1, d >= 1 and r_b >= 1");
    Rational quarter = eps / 4;
    p.alpha = power(Rational(quarter), d + 1) / 1000;
    p.alpha.canonicalize();
    p.eta = eps * eps * p.alpha / 4;
    p.eta.canonicalize();
    p.psi.assign(d, Rational(1));
    for (std::size_t m = 1; m < d; ++m) {
        p.psi[m] = eps * p.psi[m - 1] / 4;
        p.psi[m].canonicalize();
    }
    // beta = alpha^(1/eta) and everything built on it only fit as logarithms.
    double inv_eta = to_double(1 / p.eta);
    p.log10_beta = log10q(p.alpha) * inv_eta;
    double rb = static_cast<double>(r_b);
    p.log10_lambda = static_cast<double>(d + 1) * log10q(eps) + p.log10_beta -
        std::log10(static_cast<double>(d) * rb * rb) - static_cast<double>(d) * std::log10(4.0);
    p.log10_l2 = std::log10(rb * static_cast<double>(d)) + inv_eta * std::log10(std::pow(rb, static_cast<double>(d)) + 2);
    return p;
}

RefineParams RefineParams::practical(const Rational& eps, std::size_t d, std::size_t r_b, Hypergraph h,
    const Rational& alpha, const Rational& eta, const Rational& beta, const Rational& lambda)
{
    RefineParams p;
    p.mode = RefineMode::Practical;
    p.eps = eps;
    p.d = d;
    p.r_b = r_b;
    p.h = std::move(h);
    p.alpha = alpha;
    p.eta = eta;
    p.beta = beta;
    p.lambda = lambda;
    p.psi.assign(d, Rational(1));
    for (std::size_t m = 1; m < d; ++m) {
        p.psi[m] = eps * p.psi[m - 1] / 4;
        p.psi[m].canonicalize();
    }
    p.validate();
    p.log10_beta = log10q(beta);
    p.log10_lambda = log10q(lambda);
    // L_2 = ceil(r_b d (r_b^d + 2)^(1/eta)) when 1/eta is an integer small enough to expand.
    Rational inv = 1 / eta;
    inv.canonicalize();
    double rb = static_cast<double>(r_b);
    p.log10_l2 = std::log10(rb * static_cast<double>(d)) + to_double(inv) * std::log10(std::pow(rb, static_cast<double>(d)) + 2);
    if (inv.get_den() == 1 && inv.get_num() <= 64) {
        BigInt base = power(BigInt(static_cast<unsigned long>(r_b)), d) + 2;
        p.l2 = BigInt(static_cast<unsigned long>(r_b * d)) * power(base, inv.get_num().get_ui());
    }
    return p;
}

RefineParams RefineParams::at(std::size_t new_rb, const Rational& new_eps) const
{
    if (mode == RefineMode::PaperLiteral)
        return paper(new_eps, d, new_rb, h);
    // Rescale with eps the way the literal formulas do: alpha and lambda
    // scale like eps^(d+1), eta like eps^2 alpha.
    Rational q = new_eps / eps;
    q.canonicalize();
    Rational qa = power(q, d + 1);
    Rational a = alpha * qa, e = eta * qa * q * q, lam = *lambda * qa;
    a.canonicalize();
    e.canonicalize();
    lam.canonicalize();
    return practical(new_eps, d, new_rb, h, a, e, *beta, lam);
}

void RefineParams::validate() const
{
    if (eps <= 0 || eps >= 1)
        throw Error(ErrorKind::ParamViolation, "eps must lie strictly between 0 and 1");
    if (d == 0 || r_b == 0)
        throw Error(ErrorKind::ParamViolation, "d and r_b must be positive");
    if (psi.size() != d)
        throw Error(ErrorKind::ParamViolation, "psi needs d entries");
    for (std::size_t m = 1; m < psi.size(); ++m)
        if (!(psi[m] < psi[m - 1]))
            throw Error(ErrorKind::ParamViolation, "psi must be decreasing");
    if (mode == RefineMode::PaperLiteral)
        return;
    auto open = [](const std::optional<Rational>& q) { return q && *q > 0 && *q < 1; };
    if (!(alpha > 0 && alpha < 1) || !(eta > 0 && eta < 1) || !open(beta) || !open(lambda))
        throw Error(ErrorKind::ParamViolation, "practical constants alpha, eta, beta, lambda must lie in (0, 1)");
}

BigInt RefineParams::overlap_floor(std::size_t universe) const
{
    if (lambda) {
        Rational t = *lambda * Rational(BigInt(static_cast<unsigned long>(universe)));
        BigInt c;
        mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        return c;
    }
    // lambda * C(|F|, r_gamma) < 1 for every universe that fits in memory.
    if (log10_lambda + std::log10(static_cast<double>(universe) + 1) < 0)
        return 1;
    throw Error(ErrorKind::ParamViolation, "lambda is not representable for this universe");
}

std::string RefineParams::describe() const
{
    std::ostringstream o;
    o << "mode=" << (mode == RefineMode::PaperLiteral ? "paper" : "practical") << " eps=" << to_string(eps) << " d=" << d
      << " r_b=" << r_b << " alpha=" << to_string(alpha) << " eta=" << to_string(eta);
    if (beta)
        o << " beta=" << to_string(*beta);
    else
        o << " log10_beta=" << log10_beta;
    if (lambda)
        o << " lambda=" << to_string(*lambda);
    else
        o << " log10_lambda=" << log10_lambda;
    if (l2)
        o << " L2=" << to_string(*l2);
    else
        o << " log10_L2=" << log10_l2;
    return o.str();
}

// ---------------------------------------------------------------- refinement

RefineOutcome refine_pair(const FiberBundle& bundle, const VertexSet& x_in, const FiberSet& s, const RefineParams& params)
{
    const auto& b = bundle.base();
    VertexSet x = normalize_set(x_in, b.vertex_count());
    if (x.empty())
        throw Error(ErrorKind::ParamViolation, "refine_pair needs X nonempty");
    if (s.none())
        throw Error(ErrorKind::EmptyS, "refine_pair needs S nonempty");
    Rational dxs = density(bundle, x, s);
    if (dxs < params.eps)
        throw Error(ErrorKind::HypothesisViolated, "d(X,S) = " + to_string(dxs) + " is below eps = " + to_string(params.eps));
    Rational target = std::min(Rational(1), Rational(params.eta + dxs));
    const std::size_t size_s = count(s);

    RefineOutcome out;
    auto in = membership(b.vertex_count(), x);
    auto inside = edges_within(b, in);
    if (inside.empty()) {
        out.parts.push_back({{}, s});
        out.z = x;
        return out;
    }

    // Greedy: keep the minimum section density of E_1..E_m at least eps psi_m.
    std::vector<char> used(b.vertex_count(), 0);
    std::vector<FiberSet> sections{s};
    bool grew = true;
    while (grew && out.greedy.size() < params.d) {
        grew = false;
        for (std::size_t ei : inside) {
            if (out.greedy.size() >= params.d)
                break;
            const auto& e = b.edge(ei);
            if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return used[v] != 0; }))
                continue;
            std::vector<FiberSet> next;
            std::size_t least = size_s;
            for (const auto& sec : sections)
                for (Vertex v : e) {
                    next.push_back(sec & bundle.fiber(v));
                    least = std::min(least, count(next.back()));
                }
            Rational need = params.eps * params.psi[out.greedy.size()] * Rational(BigInt(static_cast<unsigned long>(size_s)));
            if (Rational(BigInt(static_cast<unsigned long>(least))) < need)
                continue;
            out.greedy.push_back(e);
            for (Vertex v : e)
                used[v] = 1;
            sections = std::move(next);
            grew = true;
        }
    }

    if (out.greedy.size() >= params.d) {
        DimWitness w{out.greedy};
        if (!audit_witness(bundle, params.h, w))
            throw Error(ErrorKind::PostconditionFailed,
                "greedy kept " + std::to_string(params.d) + " edges but some transversal section lacks the pattern");
        out.refined = false;
        out.witness = std::move(w);
        out.parts.clear();
        return out;
    }

    // R_i: transversal sections within S, shared elements kept by the least index.
    std::vector<FiberSet> t_parts;
    FiberSet seen = bundle.empty_set();
    // Trim to the largest size strictly below 2 eps |S|, dropping highest ranks.
    Rational cap_q = 2 * params.eps * Rational(BigInt(static_cast<unsigned long>(size_s)));
    BigInt cap_c;
    mpz_cdiv_q(cap_c.get_mpz_t(), cap_q.get_num_mpz_t(), cap_q.get_den_mpz_t());
    std::size_t keep = cap_c.get_ui() == 0 ? 0 : cap_c.get_ui() - 1;
    // Never trim below alpha |S|; only binds when 2 eps |S| is a handful of elements.
    Rational floor_q = params.alpha * Rational(BigInt(static_cast<unsigned long>(size_s)));
    BigInt floor_c;
    mpz_cdiv_q(floor_c.get_mpz_t(), floor_q.get_num_mpz_t(), floor_q.get_den_mpz_t());
    keep = std::max<std::size_t>(keep, floor_c.get_ui());
    for (auto r_i : sections) {
        r_i -= seen;
        seen |= r_i;
        if (Rational(BigInt(static_cast<unsigned long>(count(r_i)))) >= cap_q) {
            std::size_t kept = 0;
            for (auto i = r_i.find_first(); i != FiberSet::npos; i = r_i.find_next(i)) {
                if (kept < keep)
                    ++kept;
                else
                    r_i.reset(i);
            }
        }
        t_parts.push_back(std::move(r_i));
    }
    FiberSet rest = s;
    for (const auto& t : t_parts)
        rest -= t;
    t_parts.push_back(std::move(rest));

    std::vector<VertexSet> ys(t_parts.size());
    for (Vertex v : x) {
        bool placed = false;
        for (std::size_t i = 0; i < t_parts.size() && !placed; ++i) {
            std::size_t size_t_i = count(t_parts[i]);
            if (size_t_i == 0)
                continue;
            Rational got = ratio(count(bundle.fiber(v) & t_parts[i]), size_t_i);
            if (got >= target) {
                ys[i].push_back(v);
                placed = true;
            }
        }
        if (!placed)
            out.z.push_back(v);
    }
    for (std::size_t i = 0; i < t_parts.size(); ++i) {
        // An empty T with no vertices carries nothing; keep every other pair.
        if (t_parts[i].none() && ys[i].empty())
            continue;
        out.parts.push_back({std::move(ys[i]), std::move(t_parts[i])});
    }

    std::string why = check_refine_outcome(bundle, x, s, params, out);
    if (!why.empty())
        throw Error(ErrorKind::PostconditionFailed, why);
    return out;
}

std::string check_refine_outcome(const FiberBundle& bundle, const VertexSet& x_in, const FiberSet& s,
    const RefineParams& params, const RefineOutcome& out)
{
    const auto& b = bundle.base();
    VertexSet x = normalize_set(x_in, b.vertex_count());
    if (!out.refined) {
        if (!out.witness || out.witness->edges.size() < params.d)
            return "witness has fewer than d edges";
        auto in = membership(b.vertex_count(), x);
        for (const auto& e : out.witness->edges)
            for (Vertex v : e)
                if (!in[v])
                    return "witness edge leaves X";
        if (!audit_witness(bundle, params.h, *out.witness))
            return "witness fails the section audit";
        return {};
    }
    Rational dxs = density(bundle, x, s);
    Rational target = std::min(Rational(1), Rational(params.eta + dxs));
    std::vector<char> in(b.vertex_count(), 0);
    for (Vertex v : x)
        in[v] = 1;
    std::vector<char> hit(b.vertex_count(), 0);
    auto claim = [&](const VertexSet& part) {
        for (Vertex v : part) {
            if (v >= hit.size() || !in[v] || hit[v])
                return false;
            hit[v] = 1;
        }
        return true;
    };
    FiberSet covered = bundle.empty_set();
    BigInt bound = power(BigInt(static_cast<unsigned long>(params.r_b)), params.d) + 1;
    if (BigInt(static_cast<unsigned long>(out.parts.size())) > bound)
        return "more than r_b^d + 1 parts";
    Rational size_s(BigInt(static_cast<unsigned long>(count(s))));
    for (std::size_t i = 0; i < out.parts.size(); ++i) {
        const auto& part = out.parts[i];
        std::string tag = "part " + std::to_string(i + 1) + ": ";
        if (!claim(part.x))
            return tag + "Y overlaps another part or leaves X";
        if (part.s.intersects(covered) || !part.s.is_subset_of(s))
            return tag + "T overlaps another part or leaves S";
        covered |= part.s;
        if (Rational(BigInt(static_cast<unsigned long>(count(part.s)))) < params.alpha * size_s)
            return tag + "|T| = " + std::to_string(count(part.s)) + " is below alpha |S|";
        Rational dy = density(bundle, part.x, part.s);
        if (dy < target)
            return tag + "d(Y,T) = " + to_string(dy) + " is below " + to_string(target);
    }
    if (!claim(out.z))
        return "Z overlaps a part or leaves X";
    for (Vertex v : x)
        if (!hit[v])
            return "vertex " + std::to_string(v) + " is in no part";
    if (covered != s)
        return "the T parts do not cover S";
    if (!is_independent(b, out.z))
        return "B[Z] has an edge";
    return {};
}

RefinementStep refine_partition(const FiberBundle& bundle, const BundlePartition& p, const RefineParams& params)
{
    RefinementStep step;
    Rational dp = partition_density(bundle, p);
    if (dp == 1) {
        step.partition = p;
        return step;
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& part = p[i];
        if (part.x.empty() || part.s.none()) {
            step.partition.push_back(part);
            continue;
        }
        RefineOutcome o;
        try {
            o = refine_pair(bundle, part.x, part.s, params);
        } catch (const Error& e) {
            throw Error(e.kind(), "part " + std::to_string(i) + ": " + e.what(), e.witness());
        }
        if (!o.refined) {
            step.witness = o.witness;
            step.partition.clear();
            return step;
        }
        for (auto& q : o.parts)
            step.partition.push_back(std::move(q));
        if (!o.z.empty())
            step.partition.push_back({o.z, bundle.empty_set()});
    }
    auto fail = [](const std::string& why) { throw Error(ErrorKind::PostconditionFailed, "refinement: " + why); };
    if (!is_bundle_partition(bundle, step.partition))
        fail("result is not a partition");
    if (!is_partial_coloring(bundle, step.partition))
        fail("result is not a partial coloring");
    BigInt per = power(BigInt(static_cast<unsigned long>(params.r_b)), params.d) + 2;
    if (BigInt(static_cast<unsigned long>(step.partition.size())) > per * BigInt(static_cast<unsigned long>(p.size())))
        fail("more than (r_b^d + 2)|P| parts");
    auto rp = partition_rank(p), rq = partition_rank(step.partition);
    if (rp && rq && Rational(BigInt(static_cast<unsigned long>(*rq))) < params.alpha * Rational(BigInt(static_cast<unsigned long>(*rp))))
        fail("rank dropped below alpha times the previous rank");
    Rational dq = partition_density(bundle, step.partition);
    if (dq < std::min(Rational(1), Rational(params.eta + dp)))
        fail("density " + to_string(dq) + " below " + to_string(std::min(Rational(1), Rational(params.eta + dp))));
    return step;
}

ColorOutcome bounded_dim_coloring(const FiberBundle& bundle, const RefineParams& params)
{
    const auto& b = bundle.base();
    if (!b.uniformity())
        throw Error(ErrorKind::NonUniform, "bounded_dim_coloring needs a uniform base");
    ColorOutcome out;
    BundlePartition p{{VertexSet{}, bundle.full_set()}};
    for (Vertex v = 0; v < b.vertex_count(); ++v)
        p[0].x.push_back(v);
    if (b.vertex_count() == 0) {
        out.coloring = Coloring{};
        return out;
    }
    // At most ceil(1/eta) rounds; practical runs stop far earlier.
    Rational inv = 1 / params.eta;
    BigInt rounds;
    mpz_cdiv_q(rounds.get_mpz_t(), inv.get_num_mpz_t(), inv.get_den_mpz_t());
    while (partition_density(bundle, p) < 1) {
        if (BigInt(static_cast<unsigned long>(out.refinements)) >= rounds)
            throw Error(ErrorKind::PostconditionFailed, "density did not reach 1 within ceil(1/eta) refinements");
        auto step = refine_partition(bundle, p, params);
        ++out.refinements;
        if (step.witness) {
            out.witness = step.witness;
            return out;
        }
        p = std::move(step.partition);
    }
    out.parts = p.size();

    std::vector<std::uint32_t> color(b.vertex_count(), 0);
    std::uint32_t next = 0;
    for (const auto& part : p) {
        if (part.x.empty())
            continue;
        if (part.s.none()) {
            for (Vertex v : part.x)
                color[v] = next;
            ++next;
            continue;
        }
        auto in = membership(b.vertex_count(), part.x);
        std::vector<char> used(b.vertex_count(), 0);
        std::vector<Edge> matching;
        for (std::size_t ei : edges_within(b, in)) {
            const auto& e = b.edge(ei);
            if (std::any_of(e.begin(), e.end(), [&](Vertex v) { return used[v] != 0; }))
                continue;
            matching.push_back(e);
            for (Vertex v : e)
                used[v] = 1;
        }
        if (matching.size() >= params.d) {
            matching.resize(params.d);
            DimWitness w{matching};
            if (!audit_witness(bundle, params.h, w))
                throw Error(ErrorKind::AuditFailed, "matching of size d inside a density-one part lacks the pattern in a section");
            out.witness = std::move(w);
            return out;
        }
        for (const auto& e : matching)
            for (Vertex v : e)
                color[v] = next++;
        bool any = false;
        for (Vertex v : part.x)
            if (!used[v]) {
                color[v] = next;
                any = true;
            }
        if (any)
            ++next;
    }
    for (const auto& e : b.edges())
        if (e.size() == 1)
            out.singletons.push_back(e);
    Coloring c(color);
    if (!is_weak_coloring_ignoring_singletons(b, c))
        throw Error(ErrorKind::PostconditionFailed, "assembled coloring is not proper");
    out.coloring = std::move(c);
    return out;
}

// ---------------------------------------------------------------- merging

std::pair<FiberBundle, MergeTrace> merge_overlaps(const FiberBundle& bundle, const Rational& lambda)
{
    Rational t = lambda * Rational(BigInt(static_cast<unsigned long>(bundle.universe_size())));
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    return merge_overlaps_count(bundle, c);
}

std::pair<FiberBundle, MergeTrace> merge_overlaps_count(const FiberBundle& bundle, const BigInt& min_overlap)
{
    const auto& b = bundle.base();
    const std::size_t n = b.vertex_count();
    const std::size_t full = b.max_edge_size();
    MergeTrace trace;
    trace.original = b;
    std::vector<FiberSet> gamma;
    for (Vertex v = 0; v < n; ++v)
        gamma.push_back(bundle.fiber(v));
    std::vector<char> alive(n, 1);
    std::vector<Edge> edges = b.edges();
    auto heavy = [&](Vertex x, Vertex y) {
        return BigInt(static_cast<unsigned long>((gamma[x] & gamma[y]).count())) >= min_overlap;
    };
    while (true) {
        bool merged = false;
        for (const auto& e : edges) {
            if (e.size() != full || full < 2)
                continue;
            for (std::size_t i = 0; i < e.size() && !merged; ++i)
                for (std::size_t j = i + 1; j < e.size() && !merged; ++j) {
                    if (!heavy(e[i], e[j]))
                        continue;
                    Vertex x = e[i], y = e[j];
                    Vertex z = static_cast<Vertex>(gamma.size());
                    gamma.push_back(gamma[x] & gamma[y]);
                    alive.push_back(1);
                    alive[x] = alive[y] = 0;
                    for (auto& f : edges) {
                        bool touched = false;
                        Edge g;
                        for (Vertex v : f) {
                            if (v == x || v == y)
                                touched = true;
                            else
                                g.push_back(v);
                        }
                        if (touched) {
                            g.push_back(z);
                            f = std::move(g);
                        }
                    }
                    std::sort(edges.begin(), edges.end());
                    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
                    bool single = std::any_of(edges.begin(), edges.end(), [&](const Edge& f) { return f.size() == 1 && f[0] == z; });
                    trace.steps.push_back({x, y, z, single});
                    merged = true;
                }
            if (merged)
                break;
        }
        if (!merged)
            break;
    }
    std::vector<Vertex> compact(gamma.size(), 0);
    std::vector<FiberSet> out_gamma;
    for (Vertex id = 0; id < gamma.size(); ++id)
        if (alive[id]) {
            compact[id] = static_cast<Vertex>(trace.alive.size());
            trace.alive.push_back(id);
            out_gamma.push_back(gamma[id]);
        }
    std::vector<Edge> out_edges;
    for (const auto& e : edges) {
        Edge f;
        for (Vertex v : e)
            f.push_back(compact[v]);
        out_edges.push_back(std::move(f));
    }
    // Follow each original vertex through the merges.
    std::vector<Vertex> parent(gamma.size());
    for (Vertex id = 0; id < parent.size(); ++id)
        parent[id] = id;
    for (const auto& st : trace.steps)
        parent[st.x] = parent[st.y] = st.z;
    trace.final_of.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        Vertex id = v;
        while (parent[id] != id)
            id = parent[id];
        trace.final_of[v] = compact[id];
    }
    trace.merged = Hypergraph(trace.alive.size(), out_edges);
    FiberBundle merged(trace.merged, bundle.fiber_size(), bundle.r_gamma(), std::move(out_gamma));
    return {std::move(merged), std::move(trace)};
}

Coloring unmerge_coloring(const MergeTrace& trace, const Coloring& c)
{
    if (c.size() != trace.merged.vertex_count() || !is_weak_coloring_ignoring_singletons(trace.merged, c))
        throw Error(ErrorKind::ImproperInput, "coloring is not proper on the merged base");
    const std::size_t n = trace.original.vertex_count();
    std::vector<std::uint32_t> color(n + trace.steps.size(), 0);
    for (std::size_t i = 0; i < trace.alive.size(); ++i)
        color[trace.alive[i]] = c[i];
    auto next = static_cast<std::uint32_t>(c.color_count());
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        if (it->singleton) {
            color[it->x] = next++;
            color[it->y] = next++;
        } else {
            color[it->x] = color[it->y] = color[it->z];
        }
    }
    color.resize(n);
    Coloring out(color);
    if (!is_weak_coloring_ignoring_singletons(trace.original, out))
        throw Error(ErrorKind::PostconditionFailed, "unmerged coloring is not proper on the original base");
    return out;
}

namespace {

// Preimages of merged witness edges, one original edge per merged edge.
DimWitness pull_back(const MergeTrace& trace, const DimWitness& w)
{
    DimWitness out;
    for (const auto& target : w.edges) {
        bool found = false;
        for (const auto& e : trace.original.edges()) {
            Edge img;
            for (Vertex v : e)
                img.push_back(trace.final_of[v]);
            std::sort(img.begin(), img.end());
            img.erase(std::unique(img.begin(), img.end()), img.end());
            if (img == target) {
                out.edges.push_back(e);
                found = true;
                break;
            }
        }
        if (!found)
            throw Error(ErrorKind::InternalInvariant, "merged witness edge has no preimage");
    }
    return out;
}

ColorOutcome color_level(const FiberBundle& bundle, const RefineParams& params, const BigInt& fiber_floor, std::size_t depth)
{
    const auto& b = bundle.base();
    const std::size_t n = b.vertex_count();
    for (Vertex v = 0; v < n; ++v)
        if (BigInt(static_cast<unsigned long>(bundle.fiber(v).count())) < fiber_floor)
            throw Error(ErrorKind::HypothesisViolated, "fiber over " + std::to_string(v) + " is below the density floor");
    ColorOutcome out;
    out.levels = depth + 1;
    for (const auto& e : b.edges())
        if (e.size() == 1)
            out.singletons.push_back(e);
    const std::size_t r = b.max_edge_size();
    if (r <= 1) {
        out.coloring = Coloring(std::vector<std::uint32_t>(n, 0));
        return out;
    }
    RefineParams here = params.at(r, params.eps);
    BigInt floor = here.overlap_floor(bundle.universe_size());
    std::vector<Edge> light, rest;
    for (const auto& e : b.edges()) {
        bool low = e.size() == r;
        for (std::size_t i = 0; i < e.size() && low; ++i)
            for (std::size_t j = i + 1; j < e.size() && low; ++j)
                low = BigInt(static_cast<unsigned long>((bundle.fiber(e[i]) & bundle.fiber(e[j])).count())) < floor;
        (low ? light : rest).push_back(e);
    }

    std::vector<std::uint32_t> c1(n, 0);
    std::size_t k1 = 1;
    if (!light.empty()) {
        auto sub = bounded_dim_coloring(bundle.with_base(Hypergraph(n, light)), here);
        out.refinements += sub.refinements;
        out.parts += sub.parts;
        if (sub.witness) {
            out.witness = sub.witness;
            return out;
        }
        c1 = sub.coloring->assignment();
        k1 = std::max<std::size_t>(1, sub.coloring->color_count());
    }

    std::vector<std::uint32_t> c2(n, 0);
    if (!rest.empty()) {
        auto [merged, trace] = merge_overlaps_count(bundle.with_base(Hypergraph(n, rest)), floor);
        out.merges += trace.steps.size();
        // Merged fibers have at least `floor` elements: the next level runs at eps = lambda.
        Rational next_eps = here.lambda ? *here.lambda : here.eps;
        RefineParams deeper = here.mode == RefineMode::PaperLiteral ? here : here.at(r, next_eps);
        BigInt next_floor = std::min(fiber_floor, floor);
        auto sub = color_level(merged, deeper, next_floor, depth + 1);
        out.refinements += sub.refinements;
        out.parts += sub.parts;
        out.merges += sub.merges;
        out.levels = std::max(out.levels, sub.levels);
        if (sub.witness) {
            DimWitness w = pull_back(trace, *sub.witness);
            if (!audit_witness(bundle, params.h, w))
                throw Error(ErrorKind::AuditFailed, "pulled-back witness lacks the pattern in a section");
            out.witness = std::move(w);
            return out;
        }
        c2 = unmerge_coloring(trace, *sub.coloring).assignment();
    }
    std::vector<std::uint32_t> combined(n);
    for (Vertex v = 0; v < n; ++v)
        combined[v] = static_cast<std::uint32_t>(c2[v] * k1 + c1[v]);
    Coloring c(combined);
    if (!is_weak_coloring_ignoring_singletons(b, c))
        throw Error(ErrorKind::PostconditionFailed, "combined coloring is not proper");
    out.coloring = std::move(c);
    return out;
}

} // namespace

ColorOutcome color_with_dimension(const FiberBundle& bundle, const RefineParams& params)
{
    params.validate();
    Rational need = params.eps * Rational(BigInt(static_cast<unsigned long>(bundle.universe_size())));
    BigInt floor;
    mpz_cdiv_q(floor.get_mpz_t(), need.get_num_mpz_t(), need.get_den_mpz_t());
    return color_level(bundle, params, floor, 0);
}

} // namespace hyperchrom
