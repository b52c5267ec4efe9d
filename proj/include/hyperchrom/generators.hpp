#pragma once

#include "hyperchrom/hypergraph.hpp"

#include <string>
#include <vector>

namespace hyperchrom {

struct Generated {
    Hypergraph graph;
    LabelTable labels;
};

// Balanced part sizes, larger parts first; vertices are assigned to parts
// in contiguous blocks.
std::vector<std::size_t> turan_part_sizes(std::size_t n, std::size_t s);
std::vector<VertexSet> turan_parts(std::size_t n, std::size_t s);
// T_{r,s}(n): all r-sets with at most one vertex per part.
Hypergraph turan(std::size_t n, std::size_t r, std::size_t s);
// Closed-form edge count: elementary symmetric polynomial of the part sizes.
BigInt turan_edge_count(std::size_t n, std::size_t r, std::size_t s);

// C^r_m. Vertex i is v_{i+1}; E_{2j+1} = v_{jr+1..jr+r}, E_{2j+2} = v_{jr+2..jr+r+1}
// (indices taken around the circle), and for odd m = 2k+1 the closing edge
// is v_{rk+1..rk+r-1} plus v_1. Edge i of the cycle is returned by
// cycle_edges, since the canonical edge order of the hypergraph differs.
Hypergraph cycle(std::size_t r, std::size_t m);
std::vector<Edge> cycle_edges(std::size_t r, std::size_t m);
std::size_t cycle_vertex_count(std::size_t r, std::size_t m);

struct KneserBudget {
    std::size_t max_vertices = 50000;
    std::size_t max_edges = 5000000;
};

// KG^r_s(n,k): vertices are the k-subsets of [n] in lexicographic order
// (labels list their elements, 1-based); r of them form an edge iff no
// ground element lies in more than s of them.
Generated kneser(std::size_t n, std::size_t k, std::size_t r, std::size_t s, const KneserBudget& budget = {});
// k-subset of vertex v as a bitmask over [n] (bit i = element i+1).
std::vector<std::uint64_t> kneser_sets(std::size_t n, std::size_t k);

// Degree of any vertex of KG^3_s(n,k) for s in {1,2}, by counting.
BigInt kneser3_degree(std::size_t n, std::size_t k, std::size_t s);
// Co-degree in KG^3_2(n,k) of two vertices meeting in j elements.
BigInt kneser3_2_codegree(std::size_t n, std::size_t k, std::size_t j);

// B_{r,m}: x_1..x_{r-1} are vertices 0..r-2, y_1..y_r follow.
Hypergraph book(std::size_t r, std::size_t m);
// TK^(r)_s: core vertices 0..s-1, then r-2 padding vertices per core pair.
Generated tk(std::size_t s, std::size_t r);
// B^3 shape: X_1 = 0..n1-1, X_2 = n1..n1+n2-1.
Hypergraph b3(std::size_t n1, std::size_t n2);

// Fixed small hypergraphs: f5, f4, t5, fano (alias s7), k4 (K^3_4).
Hypergraph named(const std::string& id);
std::vector<std::string> named_ids();

} // namespace hyperchrom
