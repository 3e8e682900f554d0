#pragma once

#include "amoeba/polycore.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace amoeba {

using LatticePoint = std::vector<std::int64_t>;

/// Convex hull of finitely many integer points, stored as its extreme points in
/// lexicographic order. Lower-dimensional hulls are allowed and flagged.
class LatticePolytope {
public:
    /// Canonicalizes `points` to the extreme points of their convex hull.
    /// Throws ArgumentError on an empty set or a coordinate length mismatch.
    static LatticePolytope hull(std::size_t dim, const std::vector<LatticePoint>& points);

    std::size_t dim() const { return dim_; }
    const std::vector<LatticePoint>& vertices() const { return vertices_; }
    /// Dimension of the affine hull of the vertices.
    int affine_dim() const { return affine_dim_; }
    bool full_dimensional() const { return affine_dim_ == static_cast<int>(dim_); }

    friend bool operator==(const LatticePolytope&, const LatticePolytope&) = default;

private:
    LatticePolytope(std::size_t dim, std::vector<LatticePoint> vertices, int affine_dim)
        : dim_(dim), vertices_(std::move(vertices)), affine_dim_(affine_dim) {}

    std::size_t dim_;
    std::vector<LatticePoint> vertices_;
    int affine_dim_;
};

/// Dimension of the affine span of `points` (-1 for an empty set).
int affine_rank(const std::vector<LatticePoint>& points);

LatticePolytope newton_polytope(const MultiPoly& f);

LatticePolytope minkowski_sum(const LatticePolytope& p, const LatticePolytope& q);

/// The d-fold Minkowski sum of p with itself.
LatticePolytope dilate(const LatticePolytope& p, int d);

/// Euclidean volume in the ambient dimension (at most 4); 0 for lower-dimensional hulls.
double volume(const LatticePolytope& p);

/// Mixed volume normalized so that MV(K, ..., K) = m! vol(K), computed by
/// inclusion-exclusion over Minkowski sums of subsets.
double mixed_volume(std::span<const LatticePolytope> ks);

struct AlphaResult {
    double alpha = 0.0;
    /// Some Newton polytope is lower-dimensional.
    bool degenerate = false;
};

/// Mixed volume of the list with every polytope repeated twice.
AlphaResult mikhalkin_alpha(std::span<const LatticePolytope> deltas);

/// Lattice points of the degree-d standard simplex in `dim` variables.
LatticePolytope standard_simplex(std::size_t dim, int d);

}  // namespace amoeba
