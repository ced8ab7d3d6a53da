#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "shadow/pivot.hpp"
#include "shadow/sampler.hpp"

namespace shadow {

/// The deep-cone objective sum(a_i/||a_i||) over the basis rows, with the
/// inverse norms rationalized and then used exactly. Membership of the
/// result in cone(B) is re-verified exactly.
Vec initial_objective(const Polyhedron& p, const Basis& basis);

/// Picks an index whose conic coefficient exceeds 1/n. Coefficients are
/// passed in signed squared form s = sign(lambda) * lambda^2, which is
/// order-isomorphic to lambda and keeps irrational norms exact. Tie-break:
/// largest coefficient, then smallest index. Throws NoLargeCoefficient
/// when all coefficients are <= 1/n.
int snap_choose_index(const std::vector<std::pair<int, Rational>>& lambda_signed_sq, int n);

/// Orthogonal projection of the polyhedron onto a facet's hyperplane,
/// expressed in an exact near-orthonormal rational frame of the facet's
/// linear span. Projected zero rows (constraints parallel to the facet
/// normal) are dropped; row_map keeps the original indices.
struct FacetProjection {
    Polyhedron p;
    std::vector<int> row_map;  // projected row -> original row
    Mat frame;                 // (n-1) x n, orthogonal rows of near-unit norm
    Vec origin;                // point on the facet hyperplane
    int fixed_row = -1;

    Vec lift_point(const Vec& y) const;      // origin + frame^T y
    Vec project_vector(const Vec& v) const;  // frame * v
};

FacetProjection project_facet(const Polyhedron& p, int row);

/// Per-recursion-level accounting for the pivot-count regression checks.
struct LevelStats {
    int dim = 0;
    int pivots = 0;
    int retries = 0;
    double segment_norm = 0.0;  // ||d - c|| for the level's middle segment
    double delta = 0.0;         // sqrt of the delta^2 in force
    double pivot_bound = 0.0;   // proof bound for this level
};

struct Phase2Options {
    bool force_zero_x = false;  // test hook: deterministic chain, no randomness
    int max_degenerate_retries = 16;
    std::vector<LevelStats>* stats = nullptr;
    std::uint64_t* pivot_counter = nullptr;
    PivotTrace* trace = nullptr;
};

/// Three-segment randomized shadow path with facet recursion; returns a
/// basis optimal for d, verified exactly. Requires a polytope satisfying
/// the local delta-distance property for the supplied delta^2; when the
/// guess is too large the final verification fails with DeltaOverestimated.
Basis phase2_optimize(const Polyhedron& p, const Rational& delta_sq, const Basis& start,
                      const Vec& d, Rng& rng, const Phase2Options& opts = {});

/// Guessing loop: halves delta on DeltaOverestimated until the verified
/// answer comes back.
Basis phase2_with_delta_search(const Polyhedron& p, Rational delta_sq, const Basis& start,
                               const Vec& d, Rng& rng, const Phase2Options& opts = {},
                               int max_halvings = 64);

}  // namespace shadow
