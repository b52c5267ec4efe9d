#include "hyperchrom/kneserlab.hpp"

#include "hyperchrom/errors.hpp"
#include "hyperchrom/generators.hpp"

#include <algorithm>
#include <bit>

namespace hyperchrom {

namespace {

void check_ground(std::size_t n, std::size_t limit, const char* what)
{
    if (n > limit)
        throw Error(ErrorKind::GroundTooLarge,
            std::string(what) + " needs n <= " + std::to_string(limit) + ", got " + std::to_string(n));
}

std::vector<char> indicator(const SetFamily& fam)
{
    std::vector<char> in(std::size_t{1} << fam.ground(), 0);
    for (auto m : fam.members())
        in[m] = 1;
    return in;
}

SetFamily from_indicator(std::size_t n, const std::vector<char>& in)
{
    std::vector<std::uint64_t> members;
    for (std::uint64_t m = 0; m < in.size(); ++m)
        if (in[m])
            members.push_back(m);
    return SetFamily(n, std::move(members));
}

void require_same_ground(const SetFamily& a, const SetFamily& b)
{
    if (a.ground() != b.ground())
        throw Error(ErrorKind::ParamViolation, "families live on different ground sets");
}

} // namespace

SetFamily::SetFamily(std::size_t n, std::vector<std::uint64_t> members)
    : n_(n)
    , members_(std::move(members))
{
    check_ground(n, 63, "a set family");
    const std::uint64_t outside = n == 64 ? 0 : ~((std::uint64_t{1} << n) - 1);
    for (auto m : members_)
        if (m & outside)
            throw Error(ErrorKind::VertexOutOfRange, "family member leaves [" + std::to_string(n) + "]");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SetFamily SetFamily::from_sets(std::size_t n, const std::vector<VertexSet>& sets)
{
    std::vector<std::uint64_t> members;
    for (const auto& s : sets) {
        std::uint64_t m = 0;
        for (Vertex v : s) {
            if (v >= n)
                throw Error(ErrorKind::VertexOutOfRange, "element " + std::to_string(v) + " outside the ground set");
            m |= std::uint64_t{1} << v;
        }
        members.push_back(m);
    }
    return SetFamily(n, std::move(members));
}

bool SetFamily::contains(std::uint64_t mask) const { return std::binary_search(members_.begin(), members_.end(), mask); }

std::vector<VertexSet> SetFamily::as_sets() const
{
    std::vector<VertexSet> out;
    for (auto m : members_) {
        VertexSet s;
        for (std::uint64_t b = m; b; b &= b - 1)
            s.push_back(static_cast<Vertex>(std::countr_zero(b)));
        out.push_back(std::move(s));
    }
    return out;
}

SetFamily family_union(const SetFamily& a, const SetFamily& b)
{
    require_same_ground(a, b);
    std::vector<std::uint64_t> out;
    std::set_union(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(), std::back_inserter(out));
    return SetFamily(a.ground(), std::move(out));
}

SetFamily family_intersection(const SetFamily& a, const SetFamily& b)
{
    require_same_ground(a, b);
    std::vector<std::uint64_t> out;
    std::set_intersection(a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
        std::back_inserter(out));
    return SetFamily(a.ground(), std::move(out));
}

SetFamily family_complement(const SetFamily& fam)
{
    check_ground(fam.ground(), max_closure_ground, "complement");
    auto in = indicator(fam);
    for (auto& c : in)
        c = !c;
    return from_indicator(fam.ground(), in);
}

SetFamily all_subsets(std::size_t n)
{
    check_ground(n, max_closure_ground, "all_subsets");
    return family_complement(SetFamily(n, {}));
}

Rational weighted_size(const SetFamily& fam, const Rational& w)
{
    if (w < 0 || w > 1)
        throw Error(ErrorKind::ParamViolation, "weight must lie in [0, 1]");
    const std::size_t n = fam.ground();
    std::vector<std::size_t> by_size(n + 1, 0);
    for (auto m : fam.members())
        ++by_size[static_cast<std::size_t>(std::popcount(m))];
    Rational total(0);
    for (std::size_t j = 0; j <= n; ++j)
        if (by_size[j])
            total += Rational(BigInt(static_cast<unsigned long>(by_size[j]))) * power(w, j) * power(1 - w, n - j);
    total.canonicalize();
    return total;
}

SetFamily upward_closure(const SetFamily& fam)
{
    check_ground(fam.ground(), max_closure_ground, "upward_closure");
    auto in = indicator(fam);
    for (std::size_t i = 0; i < fam.ground(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t m = 0; m < in.size(); ++m)
            if (!(m & bit) && in[m])
                in[m | bit] = 1;
    }
    return from_indicator(fam.ground(), in);
}

SetFamily downward_closure(const SetFamily& fam)
{
    check_ground(fam.ground(), max_closure_ground, "downward_closure");
    auto in = indicator(fam);
    for (std::size_t i = 0; i < fam.ground(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << i;
        for (std::uint64_t m = 0; m < in.size(); ++m)
            if ((m & bit) && in[m])
                in[m ^ bit] = 1;
    }
    return from_indicator(fam.ground(), in);
}

bool is_increasing(const SetFamily& fam) { return upward_closure(fam) == fam; }
bool is_decreasing(const SetFamily& fam) { return downward_closure(fam) == fam; }

IntersectingResult is_r_wise_intersecting(const SetFamily& fam, std::size_t r, std::uint64_t max_nodes)
{
    IntersectingResult out;
    const auto& m = fam.members();
    if (r == 0 || r > m.size())
        return out;
    const std::uint64_t full = fam.ground() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << fam.ground()) - 1;
    std::vector<std::size_t> chosen;
    // Once the running intersection is empty any completion is a counterexample.
    auto dfs = [&](auto&& self, std::size_t from, std::uint64_t common) -> bool {
        if (++out.nodes > max_nodes)
            throw Error(ErrorKind::SearchCapExceeded, "r-wise intersection check exceeded its node budget");
        if (common == 0 && !chosen.empty()) {
            for (std::size_t i = from; chosen.size() < r; ++i)
                chosen.push_back(i);
            return true;
        }
        if (chosen.size() == r)
            return false;
        for (std::size_t i = from; i + (r - chosen.size()) <= m.size(); ++i) {
            chosen.push_back(i);
            if (self(self, i + 1, common & m[i]))
                return true;
            chosen.pop_back();
        }
        return false;
    };
    if (dfs(dfs, 0, full)) {
        out.intersecting = false;
        for (auto i : chosen)
            out.counterexample.push_back(m[i]);
    }
    return out;
}

Claim1Report claim1_certificate(std::size_t n, std::size_t k, std::size_t r, std::size_t s, const Coloring& coloring)
{
    if (r < 2 || s + 1 != r)
        throw Error(ErrorKind::ParamViolation, "the certificate is defined for s = r - 1 only");
    check_ground(n, max_closure_ground, "claim1_certificate");
    auto kg = kneser(n, k, r, s);
    const auto& h = kg.graph;
    if (coloring.size() != h.vertex_count())
        throw Error(ErrorKind::PartialColoring, "coloring does not cover the Kneser vertices");
    for (const auto& e : h.edges())
        if (std::all_of(e.begin(), e.end(), [&](Vertex v) { return coloring[v] == coloring[e[0]]; }))
            throw Error(ErrorKind::ImproperColoring, "monochromatic edge", {e.begin(), e.end()});

    Claim1Report out;
    out.n = n;
    out.k = k;
    out.r = r;
    out.colors = coloring.color_count();
    out.w = frac(static_cast<long>(r - 1), static_cast<long>(r));
    auto sets = kneser_sets(n, k);
    std::vector<std::vector<std::uint64_t>> members(out.colors);
    for (Vertex v = 0; v < h.vertex_count(); ++v)
        members[coloring[v]].push_back(sets[v]);

    SetFamily running(n, {});
    out.all_hold = true;
    Rational r_pow(1);
    for (std::size_t i = 0; i < out.colors; ++i) {
        SetFamily cls(n, members[i]);
        auto up = upward_closure(cls);
        out.class_weights.push_back(weighted_size(up, out.w));
        out.class_intersecting.push_back(is_r_wise_intersecting(cls, r).intersecting);
        out.all_hold = out.all_hold && out.class_weights.back() <= out.w && out.class_intersecting.back();
        out.classes.push_back(std::move(cls));

        running = family_union(running, up);
        r_pow *= Rational(BigInt(static_cast<unsigned long>(r)));
        Claim1Level level;
        level.l = i + 1;
        level.weight = weighted_size(running, out.w);
        level.bound = 1 - 1 / r_pow;
        level.bound.canonicalize();
        level.holds = level.weight <= level.bound;
        out.all_hold = out.all_hold && level.holds;
        out.levels.push_back(std::move(level));
    }

    auto rest = family_complement(running);
    out.complement_weight = weighted_size(rest, out.w);
    Rational tail(0);
    for (std::size_t i = 0; i < k; ++i)
        tail += Rational(binomial(n, i)) * power(out.w, i) * power(1 - out.w, n - i);
    tail.canonicalize();
    out.binomial_tail = tail;
    out.complement_matches = out.complement_weight == tail;
    out.all_hold = out.all_hold && out.complement_matches;
    return out;
}

} // namespace hyperchrom
