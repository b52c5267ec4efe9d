#pragma once

#include "hyperchrom/generators.hpp"

#include <string>
#include <vector>

namespace hyperchrom {

// Degree of every vertex of one class, or co-degree of every pair of one
// pair class.
struct ClassDegree {
    std::string name;
    BigInt degree;
};

// Exact degree accounting of a composite construction at given sizes.
struct ConstructionProfile {
    std::string id;
    bool codegree = false;
    std::vector<ClassDegree> classes;
    BigInt vertex_count;
    BigInt min_degree;
    Rational ratio; // min degree / C(N, 2), or min co-degree / N
    Rational reference;
};

struct Construction {
    Hypergraph graph;
    LabelTable labels;
    ConstructionProfile profile;
};

// Leading-order behaviour as the Kneser part becomes negligible: class sizes
// are fractions of N summing to 1 and the ratio is a function of them.
struct LimitProfile {
    std::string id;
    std::vector<std::string> fraction_names;
    std::vector<Rational> paper_point;
    Rational paper_point_ratio;
    std::vector<Rational> grid_point;
    Rational grid_ratio; // best ratio over the rational grid
    Rational reference;
};

// Kneser part KG^3(n,k) with n = 3k + 2(t-1) < 4k.
struct F5LowerParams {
    std::size_t k = 3, t = 1;
    BigInt u, v, w;
};
struct Tkf4LowerParams {
    std::size_t k = 3, t = 1;
    BigInt u, v, w;
};
struct TkfsLowerParams {
    std::size_t s = 5, k = 3, t = 1;
    BigInt u, x;
};
// Kneser part KG^3(n,k) with n = (3 + eps) k.
struct FanoLowerParams {
    std::size_t k = 2;
    Rational eps;
    BigInt u_size, v_size;
};
// Kneser part KG^3_2(n,k) with n = (3/2 + eps) k; |U| = 4N/7, |V| = 3N/7.
struct T5LowerParams {
    std::size_t k = 4;
    Rational eps;
    BigInt N;
};
// Same Kneser part; |U| = 3N/5, |V| = 2N/5; threshold k - 4 eps k.
struct FanoCodegreeParams {
    std::size_t k = 4;
    Rational eps;
    BigInt N;
};

ConstructionProfile profile_f5_lower(const F5LowerParams& p);
ConstructionProfile profile_tkf4_lower(const Tkf4LowerParams& p);
ConstructionProfile profile_tkfs_lower(const TkfsLowerParams& p);
ConstructionProfile profile_fano_lower(const FanoLowerParams& p);
ConstructionProfile profile_t5_lower(const T5LowerParams& p);
ConstructionProfile profile_fano_codegree_lower(const FanoCodegreeParams& p);

Construction construct_f5_lower(const F5LowerParams& p, std::size_t max_vertices = 5000);
Construction construct_tkf4_lower(const Tkf4LowerParams& p, std::size_t max_vertices = 5000);
Construction construct_tkfs_lower(const TkfsLowerParams& p, std::size_t max_vertices = 5000);
Construction construct_fano_lower(const FanoLowerParams& p, std::size_t max_vertices = 5000);
Construction construct_t5_lower(const T5LowerParams& p, std::size_t max_vertices = 5000);
Construction construct_fano_codegree_lower(const FanoCodegreeParams& p, std::size_t max_vertices = 5000);

// ids: f5_lower, tkf4_lower, tkfs_lower (uses s), fano_lower, t5_lower,
// fano_codegree_lower.
LimitProfile limit_profile(const std::string& id, std::size_t s = 5, std::size_t grid = 120);
std::vector<std::string> construction_ids();

// Exact profile with class sizes at the limit point, every size a multiple
// of `scale` (Kneser parts: k = 3, t = 1 for the F5/TKF families; k = 10,
// eps = 1/10 for fano_lower, whose limit tends to 9/17 only as eps -> 0; k = 4, eps = 0 for t5_lower and the co-degree
// construction).
ConstructionProfile scaled_profile(const std::string& id, const BigInt& scale, std::size_t s = 5);

// Published threshold constant for each construction.
Rational reference_constant(const std::string& id, std::size_t s = 5);

} // namespace hyperchrom
