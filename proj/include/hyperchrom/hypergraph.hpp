#pragma once

#include "hyperchrom/errors.hpp"
#include "hyperchrom/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperchrom {

using Vertex = std::uint32_t;
using Edge = std::vector<Vertex>;
using VertexSet = std::vector<Vertex>;

// Finite hypergraph on vertices 0..n-1. Immutable once built: edges are
// stored sorted, deduplicated and in lexicographic order, so equality is
// set equality.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(std::size_t i) const { return edges_[i]; }

    // Common edge size; 0 for an edgeless hypergraph, nullopt when mixed.
    std::optional<std::size_t> uniformity() const noexcept;
    bool is_uniform(std::size_t r) const noexcept;
    std::size_t max_edge_size() const noexcept { return max_size_; }
    std::size_t min_edge_size() const noexcept { return min_size_; }

    // Indices of edges containing v, ascending.
    std::span<const std::uint32_t> incident(Vertex v) const;
    std::size_t degree(Vertex v) const { return incident(v).size(); }

    bool has_edge(std::span<const Vertex> sorted_edge) const;
    std::optional<std::size_t> find_edge(std::span<const Vertex> sorted_edge) const;

    // Edge size, throwing NonUniform for mixed hypergraphs. Edgeless hypergraphs
    // report `fallback`.
    std::size_t require_uniform(std::size_t fallback = 0) const;

    friend bool operator==(const Hypergraph& a, const Hypergraph& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> inc_offsets_;
    std::vector<std::uint32_t> inc_edges_;
    std::size_t max_size_ = 0;
    std::size_t min_size_ = 0;
};

// Optional per-vertex names (Kneser vertices carry their k-subset, composite
// constructions carry the class, e.g. "U3:12").
using LabelTable = std::vector<std::string>;

struct InducedHypergraph {
    Hypergraph graph;
    std::vector<Vertex> to_parent; // local index -> vertex of the parent
};

// H[S]: edges completely contained in S, relabeled onto 0..|S|-1.
InducedHypergraph induced(const Hypergraph& h, const VertexSet& subset);

// H|_Y = { A ∩ Y : A ∈ E(H) } with empty intersections dropped. The vertex
// space (and indexing) of H is kept.
Hypergraph restriction(const Hypergraph& h, const VertexSet& y);

struct RestrictionComponent {
    VertexSet vertices;
    std::vector<Edge> edges;
};

// Connected components of H|_Y (edges adjacent when they share a vertex).
// Vertices of Y touched by no restricted edge form singleton components.
std::vector<RestrictionComponent> components_of_restriction(const Hypergraph& h, const VertexSet& y);

bool is_independent(const Hypergraph& h, const VertexSet& s);
bool is_strongly_independent(const Hypergraph& h, const VertexSet& s);

// Pairs of distinct vertices sharing an edge, as an adjacency list.
std::vector<std::vector<Vertex>> cooccurrence_graph(const Hypergraph& h);

struct StrongIndependence {
    std::size_t size = 0;
    VertexSet witness;
};

// Exact maximum strongly independent set (branch and bound over bitmasks).
StrongIndependence strong_independence_number(const Hypergraph& h, std::size_t cap = 40);

struct DegreeProfile {
    std::vector<std::size_t> degrees;
    std::size_t min_degree = 0;
    Rational ratio; // δ(H) / C(n, r-1)
    std::optional<std::size_t> k;
    std::optional<BigInt> min_k_degree;
    std::optional<Rational> k_ratio; // co-degree: / n, otherwise / C(n-k, r-k)
};

std::size_t degree(const Hypergraph& h, Vertex v);
DegreeProfile min_degree(const Hypergraph& h);
// Same as min_degree plus the minimum k-degree over all k-subsets.
DegreeProfile min_degree(const Hypergraph& h, std::size_t k);
std::size_t k_degree(const Hypergraph& h, std::span<const Vertex> tuple);

// H(t): vertex v becomes the class {v} x [t] (vertex v*t + j), each edge all
// its transversal copies.
Hypergraph blow_up(const Hypergraph& h, std::size_t t);

VertexSet normalize_set(VertexSet s, std::size_t n);

// k-subsets of {0..n-1} in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const VertexSet&)>& fn);

} // namespace hyperchrom
