#pragma once

#include <utility>

#include "shadow/geometry.hpp"

namespace shadow {

/// What a boundedness transform added and what it claims about the result.
struct BoundingReport {
    int original_m = 0;
    Mat added_rows;
    Vec added_rhs;
    Rational b_max_sq;
    Rational claimed_delta_sq_after;
};

/// max over i of b_i^2 / ||a_i||^2, i.e. b_max squared.
Rational compute_b_max_sq(const Polyhedron& p);

/// Single cutting constraint <w, x> <= n b_max/delta from a feasible basis;
/// the right-hand side is exactly upper-rounded and padded by 1 so it stays
/// strictly valid at every vertex. The result is LP equivalent and claims
/// the local (delta^2/2n)-distance property.
std::pair<Polyhedron, BoundingReport> bound_local(const Polyhedron& p, const Basis& basis,
                                                  const Rational& delta_sq);

/// Mirrored constraints -<a_i, x> <= n ||a_i|| b_max/delta + 1 for every
/// row; global delta is unchanged. `inflate` (>= 1) scales the box for
/// callers probing unbounded objectives.
std::pair<Polyhedron, BoundingReport> bound_global(const Polyhedron& p, const Rational& delta_sq,
                                                   const Rational& inflate = 1);

/// Exact recession-cone test: {x : A x <= 0} == {0}.
bool is_bounded_polyhedron(const Polyhedron& p);

/// A nonzero recession direction when one exists.
std::optional<Vec> recession_direction(const Polyhedron& p);

}  // namespace shadow
