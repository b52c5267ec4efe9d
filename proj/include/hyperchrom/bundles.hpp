#pragma once

#include "hyperchrom/coloring.hpp"
#include "hyperchrom/hypergraph.hpp"

#include <boost/dynamic_bitset.hpp>

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hyperchrom {

// A set of r_gamma-subsets of the fiber, as a bitmap over their
// lexicographic ranks.
using FiberSet = boost::dynamic_bitset<>;

struct FiberUniverse;

// (B, gamma, F) with F = {0..fiber_size-1}. Every fiber edge has exactly
// r_gamma elements; the base may have mixed edge sizes (merging produces
// them).
class FiberBundle {
public:
    FiberBundle() = default;
    FiberBundle(Hypergraph base, std::size_t fiber_size, std::size_t r_gamma, const std::vector<std::vector<Edge>>& gamma);
    FiberBundle(Hypergraph base, std::size_t fiber_size, std::size_t r_gamma, std::vector<FiberSet> gamma);

    const Hypergraph& base() const noexcept { return base_; }
    std::size_t fiber_size() const noexcept { return fiber_size_; }
    std::size_t r_gamma() const noexcept { return r_gamma_; }
    // C(|F|, r_gamma).
    std::size_t universe_size() const;

    const FiberSet& fiber(Vertex b) const { return gamma_[b]; }
    std::vector<Edge> fiber_edges(Vertex b) const { return edges_of(gamma_[b]); }

    const Edge& universe_edge(std::size_t index) const;
    // Rank of a sorted r_gamma-subset; throws BadArity for anything else.
    std::size_t index_of(const Edge& e) const;
    std::vector<Edge> edges_of(const FiberSet& s) const;
    FiberSet empty_set() const { return FiberSet(universe_size()); }
    FiberSet full_set() const;

    // Same fibers over a different base on the same vertex set.
    FiberBundle with_base(Hypergraph base) const;

    friend bool operator==(const FiberBundle& a, const FiberBundle& b)
    {
        return a.fiber_size_ == b.fiber_size_ && a.r_gamma_ == b.r_gamma_ && a.base_ == b.base_ && a.gamma_ == b.gamma_;
    }

private:
    Hypergraph base_;
    std::size_t fiber_size_ = 0;
    std::size_t r_gamma_ = 1;
    std::shared_ptr<const FiberUniverse> universe_;
    std::vector<FiberSet> gamma_;
};

// F = V(G), r_gamma = r - 1, gamma(b) = link of b.
FiberBundle neighborhood_bundle(const Hypergraph& g);

struct RainbowPartition {
    std::vector<VertexSet> parts;
    std::vector<std::size_t> rainbow_degree; // edges through v meeting every part
    std::size_t min_rainbow = 0;
    std::size_t attempts = 0;
};

// Random equitable r-partition (parts differ in size by at most one),
// retried until every rainbow degree reaches `threshold`.
RainbowPartition rainbow_partition(const Hypergraph& g, std::size_t threshold, std::uint64_t seed, std::size_t max_attempts = 1000);

// Intersection of the fibers over x; the full universe for x empty.
FiberSet section(const FiberBundle& bundle, const VertexSet& x);

// The r_gamma-graph on F formed by `s`.
Hypergraph fiber_graph(const FiberBundle& bundle, const FiberSet& s);
bool set_contains(const FiberBundle& bundle, const FiberSet& s, const Hypergraph& h);

struct DimWitness {
    std::vector<Edge> edges;
};

// Pairwise disjoint base edges whose every transversal section contains h.
bool audit_witness(const FiberBundle& bundle, const Hypergraph& h, const DimWitness& w);

struct DimResult {
    std::size_t dim = 0;
    std::optional<DimWitness> witness;
};

// Largest d <= d_max witnessed by d disjoint base edges (exhaustive).
DimResult dim_h(const FiberBundle& bundle, const Hypergraph& h, std::size_t d_max, std::uint64_t max_nodes = 20'000'000);

struct BundlePart {
    VertexSet x;
    FiberSet s;
};
using BundlePartition = std::vector<BundlePart>;

// min over x in X of |gamma(x) ∩ S| / |S|; 1 when X or S is empty.
Rational density(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s);
Rational partition_density(const FiberBundle& bundle, const BundlePartition& p);
// Least |S| over parts with S nonempty.
std::optional<std::size_t> partition_rank(const BundlePartition& p);
bool is_partial_coloring(const FiberBundle& bundle, const BundlePartition& p);
// The X's partition V(B) and the S's partition the universe.
bool is_bundle_partition(const FiberBundle& bundle, const BundlePartition& p);

// min over transversals of |gamma(x_1) ∩ ... ∩ gamma(x_t) ∩ S| / |S|.
Rational min_section_density(const FiberBundle& bundle, const std::vector<Edge>& edges, const FiberSet& s);

enum class RefineMode { PaperLiteral, Practical };

struct RefineParams {
    RefineMode mode = RefineMode::Practical;
    Rational eps;
    std::size_t d = 1;
    std::size_t r_b = 2;
    Hypergraph h; // pattern looked for inside sections

    Rational alpha;
    Rational eta;
    std::vector<Rational> psi; // psi[m-1] is psi_m
    // Exact values when they fit; the literal constants do not, and are
    // kept as base-10 logarithms only.
    std::optional<Rational> beta;
    std::optional<Rational> lambda;
    double log10_beta = 0;
    double log10_lambda = 0;
    double log10_l2 = 0;
    std::optional<BigInt> l2;

    static RefineParams paper(const Rational& eps, std::size_t d, std::size_t r_b, Hypergraph h);
    static RefineParams practical(const Rational& eps, std::size_t d, std::size_t r_b, Hypergraph h,
        const Rational& alpha, const Rational& eta, const Rational& beta, const Rational& lambda);

    // Constants for a smaller base uniformity and a new fiber-density floor.
    RefineParams at(std::size_t r_b, const Rational& eps) const;
    // Throws ParamViolation unless the mode's constraints hold.
    void validate() const;
    // Least overlap count that is at least lambda * C(|F|, r_gamma).
    BigInt overlap_floor(std::size_t universe) const;
    std::string describe() const;
};

struct RefineOutcome {
    bool refined = true;
    std::vector<BundlePart> parts; // (Y_i, T_i)
    VertexSet z;
    std::vector<Edge> greedy; // E_1..E_m
    std::optional<DimWitness> witness;
};

RefineOutcome refine_pair(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s, const RefineParams& params);
// Recomputes the postconditions of an outcome from scratch; empty string
// when all hold, otherwise the first failure.
std::string check_refine_outcome(const FiberBundle& bundle, const VertexSet& x, const FiberSet& s,
    const RefineParams& params, const RefineOutcome& out);

struct RefinementStep {
    BundlePartition partition;
    std::optional<DimWitness> witness;
};

RefinementStep refine_partition(const FiberBundle& bundle, const BundlePartition& p, const RefineParams& params);

struct ColorOutcome {
    std::optional<Coloring> coloring;
    std::optional<DimWitness> witness;
    std::vector<Edge> singletons; // the set A of size-one edges
    std::size_t refinements = 0;
    std::size_t parts = 0;
    std::size_t merges = 0;
    std::size_t levels = 0;
};

ColorOutcome bounded_dim_coloring(const FiberBundle& bundle, const RefineParams& params);

struct MergeStep {
    Vertex x = 0;
    Vertex y = 0;
    Vertex z = 0;
    bool singleton = false; // z lies in an edge of size one right after the merge
};

// Vertex ids: 0..n-1 are the original vertices, merge i creates id n + i.
struct MergeTrace {
    Hypergraph original;
    Hypergraph merged;
    std::vector<MergeStep> steps;
    std::vector<Vertex> alive;        // merged index -> id
    std::vector<Vertex> final_of;     // original vertex -> merged index
};

std::pair<FiberBundle, MergeTrace> merge_overlaps(const FiberBundle& bundle, const Rational& lambda);
std::pair<FiberBundle, MergeTrace> merge_overlaps_count(const FiberBundle& bundle, const BigInt& min_overlap);

// Pulls a coloring of the merged base back to the original base.
Coloring unmerge_coloring(const MergeTrace& trace, const Coloring& c);

ColorOutcome color_with_dimension(const FiberBundle& bundle, const RefineParams& params);

} // namespace hyperchrom
