#pragma once

#include <cstdint>
#include <vector>

#include "shadow/epspoly.hpp"
#include "shadow/geometry.hpp"

namespace shadow {

/// Thrown when the target objective leaves the support of the normal fan:
/// the exposed unbounded edge is reported for the caller to follow.
struct UnboundedDirection : Error {
    UnboundedDirection(Basis basis_, Vec ray_)
        : Error("UnboundedDirection"), basis(std::move(basis_)), ray(std::move(ray_)) {}
    Basis basis;  // basis exposing the ray, original row indices
    Vec ray;      // feasible unbounded edge direction, original coordinates
};

struct PivotRecord {
    Rational lambda;    // crossing parameter lambda*
    int leave;          // leaving row, original index
    int enter;          // entering row, original index
    Basis basis_after;  // basis after the pivot, original indices
};

struct PivotTrace {
    std::vector<PivotRecord> records;
    std::vector<std::size_t> leg_offsets;  // start of each chain leg
    std::uint64_t ops_estimate = 0;

    int pivots() const { return static_cast<int>(records.size()); }
    void append(const PivotTrace& other);
};

struct ShadowOptions {
    std::uint64_t max_pivots = 1000000;
};

struct ShadowResult {
    Basis basis;
    PivotTrace trace;
};

/// Rows permuted so that the basis occupies the last n positions; the
/// starting basis is then feasible for the symbolically perturbed system.
struct Reordered {
    Polyhedron p;
    Basis basis;            // == {m-n, ..., m-1}
    std::vector<int> perm;  // perm[new_row] = old_row
};

Reordered reorder_for_perturbation(const Polyhedron& p, const Basis& basis);

/// Parametric pivot walk from an optimal basis for c to one for d, following
/// (1-lambda) c + lambda d through the normal fan. Degeneracy is handled by
/// the symbolic right-hand-side perturbation; a general-position violation
/// of [c, d) raises DegenerateSegment for the caller to re-randomize.
ShadowResult shadow_simplex(const Polyhedron& p, const Vec& c, const Vec& d, const Basis& start,
                            const ShadowOptions& opts = {});

/// Runs shadow_simplex over consecutive waypoint pairs, feeding each leg's
/// basis into the next; traces are concatenated with leg offsets.
ShadowResult follow_segment_chain(const Polyhedron& p, const std::vector<Vec>& waypoints,
                                  const Basis& start, const ShadowOptions& opts = {});

}  // namespace shadow
