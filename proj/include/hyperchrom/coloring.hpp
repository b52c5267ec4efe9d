#pragma once

#include "hyperchrom/hypergraph.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hyperchrom {

// A total map vertex -> color with colors 0..color_count-1, each used.
class Coloring {
public:
    Coloring() = default;
    // Renumbers colors by first appearance so the invariant holds.
    explicit Coloring(std::vector<std::uint32_t> assignment);

    std::size_t size() const noexcept { return assignment_.size(); }
    std::uint32_t operator[](std::size_t v) const { return assignment_[v]; }
    const std::vector<std::uint32_t>& assignment() const noexcept { return assignment_; }
    std::size_t color_count() const noexcept { return color_count_; }
    std::vector<VertexSet> classes() const;

    friend bool operator==(const Coloring&, const Coloring&) = default;

private:
    std::vector<std::uint32_t> assignment_;
    std::size_t color_count_ = 0;
};

// True iff no edge is monochromatic. Throws PartialColoring when the
// assignment does not cover every vertex.
bool is_weak_coloring(const Hypergraph& h, const Coloring& c);
// Same check ignoring edges of size one (which no coloring can satisfy).
bool is_weak_coloring_ignoring_singletons(const Hypergraph& h, const Coloring& c);

struct SearchBudget {
    std::size_t max_vertices = 60;
    std::size_t max_edges = 100000;
    std::uint64_t max_nodes = 2'000'000'000ULL;
};

// Exact k-colorability: backtracking in saturation order with forward
// checking on edges that have one uncolored vertex left.
std::optional<Coloring> find_coloring(const Hypergraph& h, std::size_t k, const SearchBudget& budget = {});

struct ChromaticResult {
    std::size_t chi = 0;
    Coloring witness;
    std::vector<std::size_t> refuted; // every k < chi shown impossible in this run
};

// Least k <= limit with a proper weak coloring. Throws NotWithinLimit when
// every k <= limit is refuted.
ChromaticResult chromatic_number(const Hypergraph& h, std::size_t limit, const SearchBudget& budget = {});

// Partition into at most s strongly independent parts, or nullopt.
std::optional<std::vector<VertexSet>> is_s_partite(const Hypergraph& h, std::size_t s, const SearchBudget& budget = {});

} // namespace hyperchrom
