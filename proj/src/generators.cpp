#include "hyperchrom/generators.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace hyperchrom {

std::vector<std::size_t> turan_part_sizes(std::size_t n, std::size_t s)
{
    std::vector<std::size_t> sizes(s, n / s);
    for (std::size_t i = 0; i < n % s; ++i)
        ++sizes[i];
    return sizes;
}

std::vector<VertexSet> turan_parts(std::size_t n, std::size_t s)
{
    std::vector<VertexSet> parts;
    Vertex next = 0;
    for (std::size_t size : turan_part_sizes(n, s)) {
        VertexSet p(size);
        for (auto& v : p)
            v = next++;
        parts.push_back(std::move(p));
    }
    return parts;
}

Hypergraph turan(std::size_t n, std::size_t r, std::size_t s)
{
    if (r < 1 || r > s || s > n)
        throw Error(ErrorKind::BadArity, "turan needs 1 <= r <= s <= n");
    auto parts = turan_parts(n, s);
    std::vector<Edge> edges;
    Edge cur;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
        if (cur.size() == r) {
            edges.push_back(cur);
            return;
        }
        for (std::size_t p = from; p + (r - cur.size()) <= s; ++p)
            for (Vertex v : parts[p]) {
                cur.push_back(v);
                pick(p + 1);
                cur.pop_back();
            }
    };
    pick(0);
    return Hypergraph(n, std::move(edges));
}

BigInt turan_edge_count(std::size_t n, std::size_t r, std::size_t s)
{
    if (r < 1 || r > s || s > n)
        throw Error(ErrorKind::BadArity, "turan needs 1 <= r <= s <= n");
    // e_j over the part sizes, built one part at a time.
    std::vector<BigInt> e(r + 1, 0);
    e[0] = 1;
    for (std::size_t size : turan_part_sizes(n, s))
        for (std::size_t j = r; j >= 1; --j)
            e[j] += e[j - 1] * static_cast<unsigned long>(size);
    return e[r];
}

std::size_t cycle_vertex_count(std::size_t r, std::size_t m)
{
    if (r < 2 || m < 3 || (m % 2 == 0 && m < 4))
        throw Error(ErrorKind::BadArity, "cycle needs r >= 2 and m >= 3 (m >= 4 when even)");
    std::size_t k = m / 2;
    return m % 2 ? r * k + r - 1 : r * k;
}

std::vector<Edge> cycle_edges(std::size_t r, std::size_t m)
{
    const std::size_t n = cycle_vertex_count(r, m);
    const std::size_t k = m / 2;
    // v_i (1-based, circular) is vertex (i-1) mod n.
    auto run = [&](std::size_t first, std::size_t len) {
        Edge e;
        for (std::size_t i = 0; i < len; ++i)
            e.push_back(static_cast<Vertex>((first - 1 + i) % n));
        return e;
    };
    std::vector<Edge> edges;
    for (std::size_t j = 0; j < k; ++j) {
        edges.push_back(run(j * r + 1, r));
        edges.push_back(run(j * r + 2, r));
    }
    if (m % 2) {
        Edge last = run(r * k + 1, r - 1);
        last.push_back(0);
        edges.push_back(std::move(last));
    }
    return edges;
}

Hypergraph cycle(std::size_t r, std::size_t m)
{
    return Hypergraph(cycle_vertex_count(r, m), cycle_edges(r, m));
}

std::vector<std::uint64_t> kneser_sets(std::size_t n, std::size_t k)
{
    if (n > 63)
        throw Error(ErrorKind::BudgetExceeded, "kneser ground set limited to 63 elements");
    std::vector<std::uint64_t> out;
    if (k > n)
        return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        std::uint64_t mask = 0;
        for (auto i : idx)
            mask |= std::uint64_t{1} << i;
        out.push_back(mask);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Generated kneser(std::size_t n, std::size_t k, std::size_t r, std::size_t s, const KneserBudget& budget)
{
    if (k < 1 || k > n || s < 1 || s >= r)
        throw Error(ErrorKind::BadArity, "kneser needs 1 <= k <= n and 1 <= s < r");
    if (binomial(n, k) > static_cast<unsigned long>(budget.max_vertices))
        throw Error(ErrorKind::BudgetExceeded, "C(" + std::to_string(n) + "," + std::to_string(k) + ") exceeds vertex budget");
    auto sets = kneser_sets(n, k);
    const std::size_t count = sets.size();

    Generated out;
    for (auto mask : sets) {
        std::string label;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1)
                label += (label.empty() ? "" : ",") + std::to_string(i + 1);
        out.labels.push_back(label);
    }

    // multiplicity[c] = elements covered exactly c times by the chosen sets;
    // "saturated" marks elements already at multiplicity s.
    std::vector<Edge> edges;
    Edge cur;
    std::vector<std::uint8_t> mult(n, 0);
    std::function<void(std::size_t, std::uint64_t)> extend = [&](std::size_t from, std::uint64_t saturated) {
        if (cur.size() == r) {
            if (edges.size() >= budget.max_edges)
                throw Error(ErrorKind::BudgetExceeded, "kneser edge budget exceeded");
            edges.push_back(cur);
            return;
        }
        for (std::size_t i = from; i + (r - cur.size()) <= count; ++i) {
            std::uint64_t m = sets[i];
            if (m & saturated)
                continue;
            std::uint64_t next = saturated;
            for (std::uint64_t b = m; b; b &= b - 1) {
                auto e = static_cast<std::size_t>(std::countr_zero(b));
                if (++mult[e] == s)
                    next |= std::uint64_t{1} << e;
            }
            cur.push_back(static_cast<Vertex>(i));
            extend(i + 1, next);
            cur.pop_back();
            for (std::uint64_t b = m; b; b &= b - 1)
                --mult[static_cast<std::size_t>(std::countr_zero(b))];
        }
    };
    extend(0, 0);
    out.graph = Hypergraph(count, std::move(edges));
    return out;
}

BigInt kneser3_degree(std::size_t n, std::size_t k, std::size_t s)
{
    if (s == 1) {
        if (3 * k > n)
            return 0;
        return binomial(n - k, k) * binomial(n - 2 * k, k) / 2;
    }
    if (s != 2)
        throw Error(ErrorKind::BadArity, "kneser3_degree supports s = 1 or 2");
    // Ordered (B, C) with A ∩ B ∩ C empty, grouped by j = |A ∩ B|, then
    // drop the pairs where B = A, C = A or C = B.
    BigInt total = 0;
    for (std::size_t j = 0; j <= k; ++j) {
        if (k - j > n - k)
            continue;
        total += binomial(k, j) * binomial(n - k, k - j) * binomial(n - j, k);
    }
    total -= 3 * binomial(n - k, k);
    return total / 2;
}

BigInt kneser3_2_codegree(std::size_t n, std::size_t k, std::size_t j)
{
    BigInt c = binomial(n - j, k);
    if (j == 0)
        c -= 2;
    return c;
}

Hypergraph book(std::size_t r, std::size_t m)
{
    if (r < 2 || m < 1 || m > r)
        throw Error(ErrorKind::BadArity, "book needs r >= 2 and 1 <= m <= r");
    const auto y0 = static_cast<Vertex>(r - 1);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i) {
        Edge e;
        for (Vertex x = 0; x < r - 1; ++x)
            e.push_back(x);
        e.push_back(y0 + static_cast<Vertex>(i));
        edges.push_back(std::move(e));
    }
    Edge page;
    for (std::size_t i = 0; i < r; ++i)
        page.push_back(y0 + static_cast<Vertex>(i));
    edges.push_back(std::move(page));
    return Hypergraph(2 * r - 1, std::move(edges));
}

Generated tk(std::size_t s, std::size_t r)
{
    if (s < 2 || r < 2)
        throw Error(ErrorKind::BadArity, "tk needs s >= 2 and r >= 2");
    Generated out;
    for (std::size_t i = 0; i < s; ++i)
        out.labels.push_back("c" + std::to_string(i + 1));
    std::vector<Edge> edges;
    auto next = static_cast<Vertex>(s);
    for (Vertex i = 0; i < s; ++i)
        for (Vertex j = i + 1; j < s; ++j) {
            Edge e{i, j};
            for (std::size_t p = 0; p + 2 < r; ++p) {
                out.labels.push_back("p" + std::to_string(i + 1) + "-" + std::to_string(j + 1) + ":" + std::to_string(p + 1));
                e.push_back(next++);
            }
            edges.push_back(std::move(e));
        }
    out.graph = Hypergraph(next, std::move(edges));
    return out;
}

Hypergraph b3(std::size_t n1, std::size_t n2)
{
    if (n1 < 2 || n2 < 1)
        throw Error(ErrorKind::BadArity, "b3 needs n1 >= 2 and n2 >= 1");
    std::vector<Edge> edges;
    for (Vertex a = 0; a < n1; ++a)
        for (Vertex b = a + 1; b < n1; ++b)
            for (std::size_t z = 0; z < n2; ++z)
                edges.push_back({a, b, static_cast<Vertex>(n1 + z)});
    return Hypergraph(n1 + n2, std::move(edges));
}

Hypergraph named(const std::string& id)
{
    if (id == "f5")
        return Hypergraph(5, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}});
    if (id == "f4")
        return Hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {1, 2, 3}});
    if (id == "t5")
        return Hypergraph(5, {{0, 1, 2}, {0, 3, 4}, {1, 3, 4}, {2, 3, 4}});
    if (id == "fano" || id == "s7")
        return Hypergraph(7, {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {1, 3, 5}, {1, 4, 6}, {2, 3, 6}, {2, 4, 5}});
    if (id == "k4")
        return Hypergraph(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    throw Error(ErrorKind::BadArity, "unknown named hypergraph '" + id + "'");
}

std::vector<std::string> named_ids() { return {"f5", "f4", "t5", "fano", "k4"}; }

} // namespace hyperchrom
