#pragma once

#include "hyperchrom/hypergraph.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hyperchrom {

// V_1..V_r (parts[0] is V_1). Every edge crosses or lies inside V_1; the
// edges inside V_1 are pairwise disjoint.
struct NearPartition {
    std::vector<VertexSet> parts;
    std::vector<Edge> special;
    bool mono = false;
};

struct NearSearchOptions {
    std::size_t min_special = 0;
    std::size_t max_special = SIZE_MAX;
    std::optional<Edge> forced_special; // must be a special edge
    std::uint64_t max_nodes = 50'000'000;
};

// First near r-partition found, fewest special edges first (an r-partite H
// gives an empty special set).
std::optional<NearPartition> near_r_partition(const Hypergraph& h, std::size_t r, std::uint64_t max_nodes = 50'000'000);

// Calls `visit` on near r-partitions with a special-edge count in range,
// parts 2..r up to relabeling, until it returns true. Returns whether it did.
bool enumerate_near_partitions(const Hypergraph& h, std::size_t r, const NearSearchOptions& opts,
    const std::function<bool(const NearPartition&)>& visit);

// Independent re-check of the three invariants; empty string when valid.
std::string check_near_partition(const Hypergraph& h, std::size_t r, const NearPartition& p);

// Partition of X into r strongly independent parts such that each component
// of H|_Y extends into at most one part.
std::optional<std::vector<VertexSet>> is_partite_extendible(const Hypergraph& h, const VertexSet& x, const VertexSet& y,
    std::uint64_t max_nodes = 10'000'000);

// Recomputes the extension condition for a claimed partition of X.
std::string check_partite_extension(const Hypergraph& h, const VertexSet& x, const VertexSet& y,
    const std::vector<VertexSet>& parts);

enum class Verdict { Yes, No, Undecidable };
const char* to_string(Verdict v);

struct CriticalReport {
    std::size_t r = 0;
    Verdict mono = Verdict::No;
    Verdict degree_one = Verdict::No;
    Verdict turan_density = Verdict::Undecidable;
    Verdict stability = Verdict::Undecidable;
    std::optional<NearPartition> partition; // a mono near partition, if any
    std::size_t degree_one_count = 0;       // on the reported special edge
    // Set when H is an odd cycle C^r_m with m >= 5.
    std::optional<std::string> reference;
};

CriticalReport critical_syntactic(const Hypergraph& h);

struct ComponentCheck {
    VertexSet component;
    std::optional<std::vector<VertexSet>> extension;
};

struct Theorem1Gate {
    bool applies = false;
    std::optional<NearPartition> partition;
    std::vector<ComponentCheck> components;
    std::size_t partitions_tried = 0;
};

// Looks for a near r-partition in which every component of H[V_1] (single
// vertices included) is partite-extendible to V_2 ∪ ... ∪ V_r.
Theorem1Gate theorem1_gate(const Hypergraph& h, std::size_t max_partitions = 2000);

} // namespace hyperchrom
