#pragma once

#include "hyperchrom/bundles.hpp"
#include "hyperchrom/hypergraph.hpp"
#include "hyperchrom/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hyperchrom {

// (X, S): every fiber meeting S lies over a vertex of X.
struct Cut {
    VertexSet x;
    std::vector<Edge> s; // sorted fiber edges
};

bool is_cut(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s);
bool is_cut(const FiberBundle& bundle, const Cut& cut);

// Non-edges uv of a graph with N(u) ∩ N(v) nonempty, sorted.
std::vector<Edge> good_nonedges(const Hypergraph& g);

struct FiveCut {
    Cut cut;
    int which_case = 1;
    Vertex v = 0;              // Case 1: the F4-free vertex; Case 2: the max-degree vertex of G'
    VertexSet f4;              // Case 2: U with G[U] = F4
    Rational c_measured;       // δ(G) / C(n, 2)
    BigInt bound;              // 4 C(floor(c'(n-1)), 2)
    double c_threshold = 0;    // (sqrt(41) - 5) / 8
};

// 5-cut of an F5-free 3-graph's neighborhood bundle. Throws NotF5Free with the
// F5 copy as witness.
FiveCut find_5cut(const Hypergraph& g);

struct LowIndependence {
    VertexSet u;
    std::vector<Edge> matching;   // E_1..E_d
    std::vector<Edge> pairs;      // the vertex-disjoint K_2 per transversal
    std::size_t strong_independence = 0;
    std::size_t attempts = 0;
};

// |U| = 5d with strong independence number of G[U] at most (1 + eps) d.
// `witness` (d disjoint edges with K_{q,q} in every section) is searched for
// when not supplied.
LowIndependence find_low_independence_set(const Hypergraph& g, std::size_t d, std::size_t q, const Rational& eps,
    std::uint64_t seed, std::size_t max_attempts = 200, const std::optional<DimWitness>& witness = std::nullopt);

} // namespace hyperchrom
