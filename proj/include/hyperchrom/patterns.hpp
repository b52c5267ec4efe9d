#pragma once

#include "hyperchrom/hypergraph.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperchrom {

// Injective map from pattern vertices to host vertices under which every
// pattern edge lands on a host edge (containment is not necessarily induced).
struct Embedding {
    std::vector<Vertex> map;                // pattern vertex -> host vertex
    std::vector<std::size_t> image_edges;   // host edge index per pattern edge
};

struct PatternBudget {
    std::uint64_t max_nodes = 2'000'000'000ULL;
};

std::optional<Embedding> find_embedding(const Hypergraph& host, const Hypergraph& pattern, const PatternBudget& budget = {});
// Same search with some pattern vertices fixed in advance.
std::optional<Embedding> find_embedding(const Hypergraph& host, const Hypergraph& pattern,
    const std::vector<std::pair<Vertex, Vertex>>& pins, const PatternBudget& budget = {});

// Recomputes the embedding invariant from scratch.
bool validate_embedding(const Hypergraph& host, const Hypergraph& pattern, const Embedding& e);

// F5 = {abc, abd, cde} with a..e the pattern vertices 0..4 of named("f5").
std::optional<Embedding> contains_f5(const Hypergraph& g);
// F4 = {012, 013, 123} (named("f4")) using host vertex v.
std::optional<Embedding> contains_f4_at(const Hypergraph& g, Vertex v);

// Core set of s vertices: for s > r every pair shares an edge; for s <= r
// every pair {x,y} is exactly E ∩ S for some edge E.
std::optional<VertexSet> contains_tkf(const Hypergraph& g, std::size_t s, const PatternBudget& budget = {});

// Fano plane (named("fano")), by line-by-line extension over co-degree lists.
std::optional<Embedding> contains_fano(const Hypergraph& g);
// Dispatches to the dedicated detectors for f5 and fano/s7.
std::optional<Embedding> contains_named(const Hypergraph& g, const std::string& id, const PatternBudget& budget = {});

// Pattern ids accepted by pattern_by_id: f5, f4, t5, fano, s7, k4.
Hypergraph pattern_by_id(const std::string& id);

} // namespace hyperchrom
