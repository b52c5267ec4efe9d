#include "hyperchrom/constructions.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace hyperchrom {

namespace {

BigInt big(std::size_t x) { return BigInt(static_cast<unsigned long>(x)); }

// n = 3k + 2(t-1), required below 4k.
std::size_t kneser_n_for_t(std::size_t k, std::size_t t)
{
    if (k < 1 || t < 1)
        throw Error(ErrorKind::ParamViolation, "need k >= 1 and t >= 1");
    std::size_t n = 3 * k + 2 * (t - 1);
    if (n >= 4 * k)
        throw Error(ErrorKind::ParamViolation,
            "n = 3k + 2(t-1) = " + std::to_string(n) + " is not below 4k = " + std::to_string(4 * k));
    return n;
}

// n = (base + eps) k, required to be an integer.
std::size_t kneser_n_for_eps(std::size_t k, const Rational& base, const Rational& eps)
{
    Rational n = (base + eps) * Rational(big(k));
    n.canonicalize();
    if (n.get_den() != 1 || n < 1)
        throw Error(ErrorKind::ParamViolation, "(" + to_string(base) + " + eps) k = " + to_string(n) + " is not a positive integer");
    return n.get_num().get_ui();
}

void require_divides(std::size_t n, const BigInt& size, const std::string& what)
{
    if (size < 0 || size % big(n) != 0)
        throw Error(ErrorKind::ParamViolation, what + " = " + to_string(size) + " is not divisible by n = " + std::to_string(n));
}

void finish(ConstructionProfile& p)
{
    p.min_degree = p.classes.front().degree;
    for (const auto& c : p.classes)
        p.min_degree = std::min(p.min_degree, c.degree);
    BigInt denom = p.codegree ? p.vertex_count : BigInt(p.vertex_count * (p.vertex_count - 1) / 2);
    p.ratio = denom == 0 ? Rational(0) : frac(p.min_degree, denom);
    p.ratio.canonicalize();
}

std::size_t to_size(const BigInt& x, const std::string& what, std::size_t limit)
{
    if (x < 0 || !x.fits_ulong_p() || x.get_ui() > limit)
        throw Error(ErrorKind::BudgetExceeded, what + " = " + to_string(x) + " exceeds the materialization budget");
    return x.get_ui();
}

struct Builder {
    std::vector<Edge> edges;
    LabelTable labels;

    VertexSet block(const std::string& prefix, std::size_t count)
    {
        VertexSet out;
        for (std::size_t i = 0; i < count; ++i) {
            out.push_back(static_cast<Vertex>(labels.size()));
            labels.push_back(prefix + ":" + std::to_string(i + 1));
        }
        return out;
    }

    // U split into n equal parts, labelled U<i>:<index within U>.
    std::vector<VertexSet> split(const std::string& name, std::size_t n, std::size_t per_part)
    {
        std::vector<VertexSet> parts(n);
        std::size_t index = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < per_part; ++j) {
                parts[i].push_back(static_cast<Vertex>(labels.size()));
                labels.push_back(name + std::to_string(i + 1) + ":" + std::to_string(++index));
            }
        return parts;
    }

    void kneser_part(const Generated& kg)
    {
        for (const auto& l : kg.labels)
            labels.push_back("K:{" + l + "}");
        edges.insert(edges.end(), kg.graph.edges().begin(), kg.graph.edges().end());
    }

    void triple(Vertex a, Vertex b, Vertex c) { edges.push_back({a, b, c}); }

    Hypergraph build() { return Hypergraph(labels.size(), std::move(edges)); }
};

VertexSet flatten(const std::vector<VertexSet>& parts)
{
    VertexSet out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<std::size_t> elements(std::uint64_t mask)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask; ++i, mask >>= 1)
        if (mask & 1)
            out.push_back(i);
    return out;
}

void check_total(const BigInt& total, std::size_t max_vertices)
{
    to_size(total, "vertex count", max_vertices);
}

} // namespace

Rational reference_constant(const std::string& id, std::size_t s)
{
    if (id == "f5_lower")
        return Rational(6, 49);
    if (id == "tkf4_lower")
        return Rational(18, 361);
    if (id == "tkfs_lower") {
        if (s < 5)
            throw Error(ErrorKind::ParamViolation, "tkfs construction needs s >= 5");
        BigInt num = big((s - 2) * (s - 3) * (s - 4) * (s - 4));
        BigInt den = big(s * s - 13) * big(s * s - 13);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (id == "fano_lower")
        return Rational(9, 17);
    if (id == "t5_lower")
        return Rational(16, 49);
    if (id == "fano_codegree_lower")
        return Rational(2, 5);
    throw Error(ErrorKind::BadArity, "unknown construction '" + id + "'");
}

std::vector<std::string> construction_ids()
{
    return {"f5_lower", "tkf4_lower", "tkfs_lower", "fano_lower", "t5_lower", "fano_codegree_lower"};
}

// ---------------------------------------------------------------- F5

ConstructionProfile profile_f5_lower(const F5LowerParams& p)
{
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k;
    require_divides(n, p.u, "u");
    BigInt per = p.u / big(n);
    BigInt link = binomial(n - 1, k - 1);
    ConstructionProfile out;
    out.id = "f5_lower";
    out.reference = reference_constant(out.id);
    out.vertex_count = binomial(n, k) + p.u + p.v + p.w;
    out.classes = {
        {"K", kneser3_degree(n, k, 1) + big(k) * per * p.v},
        {"U", link * p.v + p.v * p.w},
        {"V", p.u * link + p.u * p.w},
        {"W", p.u * p.v},
    };
    finish(out);
    return out;
}

Construction construct_f5_lower(const F5LowerParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_f5_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k;
    Builder b;
    auto kg = kneser(n, k, 3, 1);
    b.kneser_part(kg);
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(p.u, "u", max_vertices) / n);
    auto V = b.block("V", to_size(p.v, "v", max_vertices));
    auto W = b.block("W", to_size(p.w, "w", max_vertices));
    for (Vertex S = 0; S < sets.size(); ++S)
        for (auto i : elements(sets[S]))
            for (Vertex x : U[i])
                for (Vertex y : V)
                    b.triple(S, x, y);
    for (Vertex x : flatten(U))
        for (Vertex y : V)
            for (Vertex z : W)
                b.triple(x, y, z);
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- TKF4

ConstructionProfile profile_tkf4_lower(const Tkf4LowerParams& p)
{
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k;
    require_divides(n, p.u, "u");
    require_divides(n, p.v, "v");
    BigInt pu = p.u / big(n), pv = p.v / big(n);
    BigInt link = binomial(n - 1, k - 1);
    ConstructionProfile out;
    out.id = "tkf4_lower";
    out.reference = reference_constant(out.id);
    out.vertex_count = binomial(n, k) + p.u + p.v + p.w;
    out.classes = {
        {"K", kneser3_degree(n, k, 1) + (big(k) * pu) * (big(k) * pv)},
        {"U", p.v * p.w + link * big(k) * pv},
        {"V", p.u * p.w + link * big(k) * pu},
        {"W", p.u * p.v},
    };
    finish(out);
    return out;
}

Construction construct_tkf4_lower(const Tkf4LowerParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_tkf4_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k;
    Builder b;
    b.kneser_part(kneser(n, k, 3, 1));
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(p.u, "u", max_vertices) / n);
    auto V = b.split("V", n, to_size(p.v, "v", max_vertices) / n);
    auto W = b.block("W", to_size(p.w, "w", max_vertices));
    for (Vertex S = 0; S < sets.size(); ++S) {
        auto el = elements(sets[S]);
        for (auto i : el)
            for (auto j : el)
                for (Vertex x : U[i])
                    for (Vertex y : V[j])
                        b.triple(S, x, y);
    }
    for (Vertex x : flatten(U))
        for (Vertex y : flatten(V))
            for (Vertex z : W)
                b.triple(x, y, z);
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- TKF_s

ConstructionProfile profile_tkfs_lower(const TkfsLowerParams& p)
{
    if (p.s < 5)
        throw Error(ErrorKind::ParamViolation, "tkfs construction needs s >= 5");
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k, s = p.s;
    require_divides(n, p.u, "u");
    BigInt pu = p.u / big(n);
    BigInt link = binomial(n - 1, k - 1);
    const BigInt& x = p.x;
    ConstructionProfile out;
    out.id = "tkfs_lower";
    out.reference = reference_constant(out.id, s);
    out.vertex_count = binomial(n, k) + p.u + big(s - 2) * x;
    BigInt complete_v = p.u * big(s - 3) * x + binomial(s - 3, 2) * x * x;
    out.classes = {
        {"K", kneser3_degree(n, k, 1) + binomial(s - 4, 2) * x * x + big(k) * pu * big(s - 4) * x},
        {"U", binomial(s - 2, 2) * x * x + link * big(s - 4) * x},
        {"V", complete_v + binomial(n, k) * big(s - 5) * x + link * p.u},
        {"W", complete_v},
    };
    finish(out);
    return out;
}

Construction construct_tkfs_lower(const TkfsLowerParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_tkfs_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    const std::size_t n = kneser_n_for_t(p.k, p.t), k = p.k, s = p.s;
    const std::size_t x = to_size(p.x, "x", max_vertices);
    Builder b;
    b.kneser_part(kneser(n, k, 3, 1));
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(p.u, "u", max_vertices) / n);
    std::vector<VertexSet> parts{flatten(U), b.block("W1", x), b.block("W2", x)};
    std::vector<VertexSet> V;
    for (std::size_t i = 0; i + 4 < s; ++i) {
        V.push_back(b.block("V" + std::to_string(i + 1), x));
        parts.push_back(V.back());
    }
    for (std::size_t a = 0; a < parts.size(); ++a)
        for (std::size_t c = a + 1; c < parts.size(); ++c)
            for (std::size_t d = c + 1; d < parts.size(); ++d)
                for (Vertex x1 : parts[a])
                    for (Vertex x2 : parts[c])
                        for (Vertex x3 : parts[d])
                            b.triple(x1, x2, x3);
    VertexSet allV = flatten(V);
    for (Vertex S = 0; S < sets.size(); ++S) {
        for (std::size_t i = 0; i < V.size(); ++i)
            for (std::size_t j = i + 1; j < V.size(); ++j)
                for (Vertex v1 : V[i])
                    for (Vertex v2 : V[j])
                        b.triple(S, v1, v2);
        for (auto i : elements(sets[S]))
            for (Vertex u : U[i])
                for (Vertex v : allV)
                    b.triple(S, u, v);
    }
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- Fano

namespace {

std::size_t fano_n(const FanoLowerParams& p)
{
    if (p.eps < 0)
        throw Error(ErrorKind::ParamViolation, "eps must be nonnegative");
    std::size_t n = kneser_n_for_eps(p.k, Rational(3), p.eps);
    if (n >= 7 * p.k)
        throw Error(ErrorKind::ParamViolation, "n = (3 + eps) k must stay below 7k");
    require_divides(n, p.u_size, "|U|");
    return n;
}

} // namespace

ConstructionProfile profile_fano_lower(const FanoLowerParams& p)
{
    const std::size_t n = fano_n(p), k = p.k;
    const BigInt& U = p.u_size;
    const BigInt& V = p.v_size;
    BigInt per = U / big(n);
    BigInt K = binomial(n, k);
    auto c2 = [](const BigInt& x) { return BigInt(x * (x - 1) / 2); };
    ConstructionProfile out;
    out.id = "fano_lower";
    out.reference = reference_constant(out.id);
    out.vertex_count = K + U + V;
    out.classes = {
        {"K", kneser3_degree(n, k, 1) + U * V + c2(big(k) * per)},
        {"U", K * V + binomial(n - 1, k - 1) * (big(k) * per - 1) + c2(U + V - 1) - c2(U - 1)},
        {"V", K * U + c2(U + V - 1) - c2(V - 1)},
    };
    finish(out);
    return out;
}

Construction construct_fano_lower(const FanoLowerParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_fano_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    const std::size_t n = fano_n(p), k = p.k;
    Builder b;
    b.kneser_part(kneser(n, k, 3, 1));
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(p.u_size, "|U|", max_vertices) / n);
    auto V = b.block("V", to_size(p.v_size, "|V|", max_vertices));
    VertexSet allU = flatten(U);
    VertexSet uv = allU;
    uv.insert(uv.end(), V.begin(), V.end());
    std::vector<char> inU(b.labels.size(), 0);
    for (Vertex u : allU)
        inU[u] = 1;
    for (std::size_t a = 0; a < uv.size(); ++a)
        for (std::size_t c = a + 1; c < uv.size(); ++c)
            for (std::size_t d = c + 1; d < uv.size(); ++d) {
                int us = inU[uv[a]] + inU[uv[c]] + inU[uv[d]];
                if (us >= 1 && us <= 2)
                    b.triple(uv[a], uv[c], uv[d]);
            }
    for (Vertex S = 0; S < sets.size(); ++S) {
        for (Vertex u : allU)
            for (Vertex v : V)
                b.triple(S, u, v);
        VertexSet near;
        for (auto i : elements(sets[S]))
            near.insert(near.end(), U[i].begin(), U[i].end());
        for (std::size_t a = 0; a < near.size(); ++a)
            for (std::size_t c = a + 1; c < near.size(); ++c)
                b.triple(S, near[a], near[c]);
    }
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- T5

namespace {

struct T5Sizes {
    std::size_t n;
    BigInt U, V;
};

T5Sizes t5_sizes(std::size_t k, const Rational& eps, const BigInt& N, const Rational& cap, int ushare, int total)
{
    if (eps < 0 || eps >= cap)
        throw Error(ErrorKind::ParamViolation, "eps = " + to_string(eps) + " must lie in [0, " + to_string(cap) + ")");
    T5Sizes s;
    s.n = kneser_n_for_eps(k, Rational(3, 2), eps);
    if (N % total != 0)
        throw Error(ErrorKind::ParamViolation, "N = " + to_string(N) + " is not divisible by " + std::to_string(total));
    s.U = N / total * ushare;
    s.V = N - s.U;
    require_divides(s.n, s.U, "|U|");
    return s;
}

} // namespace

ConstructionProfile profile_t5_lower(const T5LowerParams& p)
{
    auto sz = t5_sizes(p.k, p.eps, p.N, Rational(1, 4), 4, 7);
    const std::size_t n = sz.n, k = p.k;
    BigInt per = sz.U / big(n);
    BigInt link = binomial(n - 1, k - 1);
    ConstructionProfile out;
    out.id = "t5_lower";
    out.reference = reference_constant(out.id);
    out.vertex_count = binomial(n, k) + p.N;
    out.classes = {
        {"K", kneser3_degree(n, k, 2) + big(k) * per * sz.V},
        {"U", (sz.U - 1) * sz.V + link * sz.V},
        {"V", sz.U * (sz.U - 1) / 2 + sz.U * link},
    };
    finish(out);
    return out;
}

Construction construct_t5_lower(const T5LowerParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_t5_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    auto sz = t5_sizes(p.k, p.eps, p.N, Rational(1, 4), 4, 7);
    const std::size_t n = sz.n, k = p.k;
    Builder b;
    b.kneser_part(kneser(n, k, 3, 2));
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(sz.U, "|U|", max_vertices) / n);
    auto V = b.block("V", to_size(sz.V, "|V|", max_vertices));
    VertexSet allU = flatten(U);
    for (std::size_t a = 0; a < allU.size(); ++a)
        for (std::size_t c = a + 1; c < allU.size(); ++c)
            for (Vertex v : V)
                b.triple(allU[a], allU[c], v);
    for (Vertex X = 0; X < sets.size(); ++X)
        for (auto i : elements(sets[X]))
            for (Vertex u : U[i])
                for (Vertex v : V)
                    b.triple(X, u, v);
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- Fano co-degree

ConstructionProfile profile_fano_codegree_lower(const FanoCodegreeParams& p)
{
    auto sz = t5_sizes(p.k, p.eps, p.N, Rational(1, 10), 3, 5);
    const std::size_t n = sz.n, k = p.k;
    const BigInt& U = sz.U;
    const BigInt& V = sz.V;
    BigInt per = U / big(n);
    BigInt K = binomial(n, k);
    Rational thr = Rational(big(k)) - 4 * p.eps * Rational(big(k));
    auto small = [&](std::size_t j) { return Rational(big(j)) < thr; };

    ConstructionProfile out;
    out.id = "fano_codegree_lower";
    out.codegree = true;
    out.reference = reference_constant(out.id);
    out.vertex_count = K + p.N;

    // Pairs X, Y in K meeting in j elements.
    for (std::size_t j = (2 * k > n ? 2 * k - n : 0); j < k; ++j) {
        if (binomial(k, j) * binomial(n - k, k - j) == 0)
            continue;
        BigInt via_u = per * big(small(j) ? 2 * k - j : j);
        out.classes.push_back({"KK" + std::to_string(j), kneser3_2_codegree(n, k, j) + via_u});
    }
    // X in K with u in U_i, split by whether i is in X.
    BigInt in = V, out_x = V;
    for (std::size_t j = 0; j < k; ++j) {
        if (small(j))
            in += binomial(k, j) * binomial(n - k, k - j);
        else if (j >= 1)
            in += binomial(k - 1, j - 1) * binomial(n - k, k - j);
        if (small(j) && n > k && k >= j + 1)
            out_x += binomial(k, j) * binomial(n - k - 1, k - j - 1);
    }
    out.classes.push_back({"KU_in", in});
    if (n > k)
        out.classes.push_back({"KU_out", out_x});
    out.classes.push_back({"KV", U});
    if (U >= 2)
        out.classes.push_back({"UU", V});
    out.classes.push_back({"UV", U + V - 2 + K});
    if (V >= 2)
        out.classes.push_back({"VV", U});
    finish(out);
    return out;
}

Construction construct_fano_codegree_lower(const FanoCodegreeParams& p, std::size_t max_vertices)
{
    Construction out;
    out.profile = profile_fano_codegree_lower(p);
    check_total(out.profile.vertex_count, max_vertices);
    auto sz = t5_sizes(p.k, p.eps, p.N, Rational(1, 10), 3, 5);
    const std::size_t n = sz.n, k = p.k;
    Rational thr = Rational(big(k)) - 4 * p.eps * Rational(big(k));
    Builder b;
    b.kneser_part(kneser(n, k, 3, 2));
    auto sets = kneser_sets(n, k);
    auto U = b.split("U", n, to_size(sz.U, "|U|", max_vertices) / n);
    auto V = b.block("V", to_size(sz.V, "|V|", max_vertices));
    VertexSet allU = flatten(U);
    VertexSet uv = allU;
    uv.insert(uv.end(), V.begin(), V.end());
    std::vector<char> inU(b.labels.size(), 0);
    for (Vertex u : allU)
        inU[u] = 1;
    for (std::size_t a = 0; a < uv.size(); ++a)
        for (std::size_t c = a + 1; c < uv.size(); ++c)
            for (std::size_t d = c + 1; d < uv.size(); ++d) {
                int us = inU[uv[a]] + inU[uv[c]] + inU[uv[d]];
                if (us >= 1 && us <= 2)
                    b.triple(uv[a], uv[c], uv[d]);
            }
    for (Vertex X = 0; X < sets.size(); ++X) {
        for (Vertex u : allU)
            for (Vertex v : V)
                b.triple(X, u, v);
        for (Vertex Y = X + 1; Y < sets.size(); ++Y) {
            std::uint64_t meet = sets[X] & sets[Y];
            auto j = static_cast<std::size_t>(std::popcount(meet));
            std::uint64_t allowed = Rational(big(j)) < thr ? (sets[X] | sets[Y]) : meet;
            for (auto i : elements(allowed))
                for (Vertex u : U[i])
                    b.triple(X, Y, u);
        }
    }
    out.graph = b.build();
    out.labels = std::move(b.labels);
    return out;
}

// ---------------------------------------------------------------- limits

namespace {

using Fractions = std::vector<Rational>;

Rational min_of(std::initializer_list<Rational> xs)
{
    Rational m = *xs.begin();
    for (const auto& x : xs)
        if (x < m)
            m = x;
    return m;
}

} // namespace

LimitProfile limit_profile(const std::string& id, std::size_t s, std::size_t grid)
{
    LimitProfile out;
    out.id = id;
    out.reference = reference_constant(id, s);
    std::function<Rational(const Fractions&)> f;
    std::vector<Fractions> points;
    const Rational third(1, 3);

    auto simplex3 = [&] {
        for (std::size_t i = 1; i < grid; ++i)
            for (std::size_t j = 1; i + j < grid; ++j)
                points.push_back({frac(big(i), big(grid)), frac(big(j), big(grid)),
                    frac(big(grid - i - j), big(grid))});
    };
    auto simplex2 = [&] {
        for (std::size_t i = 1; i < grid; ++i)
            points.push_back({frac(big(i), big(grid)), frac(big(grid - i), big(grid))});
    };

    if (id == "f5_lower") {
        out.fraction_names = {"u", "v", "w"};
        f = [&](const Fractions& q) -> Rational { return 2 * min_of({q[0] * q[1] * third, q[1] * q[2], q[0] * q[2], q[0] * q[1]}); };
        out.paper_point = {Rational(3, 7), Rational(3, 7), Rational(1, 7)};
        simplex3();
    } else if (id == "tkf4_lower") {
        out.fraction_names = {"u", "v", "w"};
        f = [&](const Fractions& q) -> Rational {
            return 2 * min_of({q[0] * q[1] * third * third, q[1] * q[2], q[0] * q[2], q[0] * q[1]});
        };
        out.paper_point = {Rational(9, 19), Rational(9, 19), Rational(1, 19)};
        simplex3();
    } else if (id == "tkfs_lower") {
        if (s < 5)
            throw Error(ErrorKind::ParamViolation, "tkfs construction needs s >= 5");
        out.fraction_names = {"u", "x"};
        Rational c4(binomial(s - 4, 2)), c3(binomial(s - 3, 2)), c2(binomial(s - 2, 2));
        Rational s4(big(s - 4)), s3(big(s - 3));
        f = [=](const Fractions& q) -> Rational {
            const Rational& u = q[0];
            const Rational& x = q[1];
            return 2 * min_of({third * s4 * u * x + c4 * x * x, c2 * x * x, s3 * u * x + c3 * x * x});
        };
        Rational x = frac(big(s - 4), big(s * s - 13));
        Rational u = frac(big(3 * (2 * s - 7)), big(s * s - 13));
        out.paper_point = {u, x};
        for (std::size_t i = 1; i < grid; ++i) {
            Rational xi(big(i), big(grid * (s - 2)));
            Rational ui = 1 - Rational(big(s - 2)) * xi;
            if (ui > 0)
                points.push_back({ui, xi});
        }
    } else if (id == "fano_lower") {
        out.fraction_names = {"U", "V"};
        f = [&](const Fractions& q) -> Rational {
            Rational ab = q[0] * q[1];
            return 2 * min_of({ab + q[0] * q[0] / 18, ab + q[1] * q[1] / 2, ab + q[0] * q[0] / 2});
        };
        out.paper_point = {Rational(9, 17), Rational(8, 17)};
        simplex2();
    } else if (id == "t5_lower") {
        out.fraction_names = {"U", "V"};
        f = [&](const Fractions& q) -> Rational {
            Rational ab = q[0] * q[1];
            return 2 * min_of({2 * ab * third, ab, q[0] * q[0] / 2});
        };
        out.paper_point = {Rational(4, 7), Rational(3, 7)};
        simplex2();
    } else if (id == "fano_codegree_lower") {
        out.fraction_names = {"U", "V"};
        f = [&](const Fractions& q) -> Rational { return min_of({2 * q[0] * third, q[0], q[1]}); };
        out.paper_point = {Rational(3, 5), Rational(2, 5)};
        simplex2();
    } else {
        throw Error(ErrorKind::BadArity, "unknown construction '" + id + "'");
    }

    out.paper_point_ratio = f(out.paper_point);
    out.paper_point_ratio.canonicalize();
    out.grid_ratio = -1;
    for (const auto& q : points) {
        Rational r = f(q);
        if (r > out.grid_ratio) {
            out.grid_ratio = r;
            out.grid_point = q;
        }
    }
    out.grid_ratio.canonicalize();
    return out;
}

} // namespace hyperchrom

namespace hyperchrom {

ConstructionProfile scaled_profile(const std::string& id, const BigInt& scale, std::size_t s)
{
    if (scale <= 0)
        throw Error(ErrorKind::ParamViolation, "scale must be positive");
    if (id == "f5_lower")
        return profile_f5_lower({3, 1, 27 * scale, 27 * scale, 9 * scale});
    if (id == "tkf4_lower")
        return profile_tkf4_lower({3, 1, 81 * scale, 81 * scale, 9 * scale});
    if (id == "tkfs_lower")
        return profile_tkfs_lower({s, 3, 1, 81 * scale, 9 * scale});
    if (id == "fano_lower")
        return profile_fano_lower({10, Rational(1, 10), 279 * scale, 248 * scale});
    if (id == "t5_lower")
        return profile_t5_lower({4, Rational(0), 42 * scale});
    if (id == "fano_codegree_lower")
        return profile_fano_codegree_lower({4, Rational(0), 30 * scale});
    throw Error(ErrorKind::BadArity, "unknown construction '" + id + "'");
}

} // namespace hyperchrom
