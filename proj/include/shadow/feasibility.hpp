#pragma once

#include <optional>

#include "shadow/bounding.hpp"
#include "shadow/optimize.hpp"

namespace shadow {

/// Rounds a feasible point to a feasible basis by walking null-space
/// directions of the currently tight independent rows until n independent
/// rows are tight.
Basis ray_cast_to_basis(const Polyhedron& p, const Vec& x0);

/// Witness of an infeasible round: min <a_row, x> over the partial system
/// came out as gamma > rhs. row == -1 marks the auxiliary-LP witness, where
/// gamma is the optimal slack variable.
struct InfeasibleCertificate {
    int row = -1;
    Rational gamma;
    Rational rhs;
};

struct Phase1Result {
    std::optional<Basis> basis;
    std::optional<InfeasibleCertificate> infeasible;
    std::uint64_t pivots = 0;

    bool feasible() const { return basis.has_value(); }
};

/// Phase 1 via the auxiliary min-slack LP for integral matrices with
/// subdeterminants bounded by Delta.
Phase1Result phase1_subdeterminant(const Polyhedron& p, const Integer& Delta, Rng& rng);

/// Phase 1 that adds the constraints one at a time, re-optimizing each new
/// row over the current partial polyhedron. Requires the global
/// delta-distance property for the supplied delta^2.
Phase1Result phase1_global_delta(const Polyhedron& p, const Rational& delta_sq, Rng& rng);

}  // namespace shadow
