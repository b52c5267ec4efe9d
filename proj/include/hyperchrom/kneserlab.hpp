#pragma once

#include "hyperchrom/coloring.hpp"
#include "hyperchrom/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hyperchrom {

// A family of subsets of [n]; member i is a bitmask (bit j = element j).
// Members are kept sorted and deduplicated.
class SetFamily {
public:
    SetFamily() = default;
    SetFamily(std::size_t n, std::vector<std::uint64_t> members);
    static SetFamily from_sets(std::size_t n, const std::vector<VertexSet>& sets);

    std::size_t ground() const noexcept { return n_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<std::uint64_t>& members() const noexcept { return members_; }
    bool contains(std::uint64_t mask) const;
    std::vector<VertexSet> as_sets() const;

    friend bool operator==(const SetFamily&, const SetFamily&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> members_;
};

inline constexpr std::size_t max_closure_ground = 22;

SetFamily family_union(const SetFamily& a, const SetFamily& b);
SetFamily family_intersection(const SetFamily& a, const SetFamily& b);
// All subsets of [n] not in the family. n <= 22.
SetFamily family_complement(const SetFamily& fam);
SetFamily all_subsets(std::size_t n);

// Σ w^|F| (1-w)^(n-|F|) over the members.
Rational weighted_size(const SetFamily& fam, const Rational& w);

// Superset closure / subset closure. Both need n <= 22.
SetFamily upward_closure(const SetFamily& fam);
SetFamily downward_closure(const SetFamily& fam);
bool is_increasing(const SetFamily& fam);
bool is_decreasing(const SetFamily& fam);

struct IntersectingResult {
    bool intersecting = true;
    std::vector<std::uint64_t> counterexample; // r distinct members with empty intersection
    std::uint64_t nodes = 0;
};

// Decides whether every r distinct members share an element.
IntersectingResult is_r_wise_intersecting(const SetFamily& fam, std::size_t r, std::uint64_t max_nodes = 50'000'000);

struct Claim1Level {
    std::size_t l = 0;
    Rational weight; // W of the union of the first l closures
    Rational bound;  // 1 - 1/r^l
    bool holds = false;
};

struct Claim1Report {
    std::size_t n = 0, k = 0, r = 0, colors = 0;
    Rational w;
    std::vector<SetFamily> classes;      // F_i as k-sets
    std::vector<Rational> class_weights; // W[F_i*], each at most w
    std::vector<bool> class_intersecting;
    std::vector<Claim1Level> levels;
    Rational complement_weight;  // W of the subsets outside the union
    Rational binomial_tail;      // Σ_{i<k} C(n,i) w^i (1-w)^(n-i)
    bool complement_matches = false;
    bool all_hold = false;
};

// Certificate for a coloring of KG^r_{r-1}(n,k) (vertices as in kneser()).
Claim1Report claim1_certificate(std::size_t n, std::size_t k, std::size_t r, std::size_t s, const Coloring& coloring);

} // namespace hyperchrom
