#include "shadow/bounding.hpp"

#include <cassert>

#include "shadow/combinations.hpp"
#include "shadow/optimize.hpp"

namespace shadow {

Rational compute_b_max_sq(const Polyhedron& p) {
    Rational best = 0;
    for (int i = 0; i < p.m(); ++i) {
        Rational nsq = norm_sq(p.row(i));
        if (sgn(nsq) == 0) continue;
        Rational v = p.b()[i] * p.b()[i] / nsq;
        if (v > best) best = v;
    }
    return best;
}

namespace {

Polyhedron append_rows(const Polyhedron& p, const Mat& rows, const Vec& rhs) {
    Mat a(p.m() + rows.rows(), p.n());
    Vec b(p.m() + rows.rows());
    for (int i = 0; i < p.m(); ++i) {
        for (int j = 0; j < p.n(); ++j) a(i, j) = p.A()(i, j);
        b[i] = p.b()[i];
    }
    for (int i = 0; i < rows.rows(); ++i) {
        for (int j = 0; j < p.n(); ++j) a(p.m() + i, j) = rows(i, j);
        b[p.m() + i] = rhs[i];
    }
    return Polyhedron(std::move(a), std::move(b));
}

}  // namespace

std::pair<Polyhedron, BoundingReport> bound_local(const Polyhedron& p, const Basis& basis,
                                                  const Rational& delta_sq) {
    if (sgn(delta_sq) <= 0) throw BadParams("delta^2 must be positive");
    if (!p.basis_feasible(basis)) throw InfeasibleBasis();
    const int n = p.n();

    Vec w(n);
    for (int i : basis) {
        Vec row = p.row(i);
        w -= approx_inv_norm(row) * row;
    }
    w *= Rational(1, n);

    Rational b_max_sq = compute_b_max_sq(p);
    // n b_max/delta, upper-rounded, plus 1 for strict validity even when
    // b_max = 0 (vertex at the origin).
    Rational rhs = Rational(n) * sqrt_upper(b_max_sq) / sqrt_lower(delta_sq) + 1;

    Mat added(1, n);
    added.set_row(0, w);
    Vec added_rhs(1);
    added_rhs[0] = rhs;

    BoundingReport report;
    report.original_m = p.m();
    report.added_rows = added;
    report.added_rhs = added_rhs;
    report.b_max_sq = b_max_sq;
    report.claimed_delta_sq_after = (delta_sq * delta_sq) / (4 * n * n);

    return {append_rows(p, added, added_rhs), std::move(report)};
}

std::pair<Polyhedron, BoundingReport> bound_global(const Polyhedron& p, const Rational& delta_sq,
                                                   const Rational& inflate) {
    if (sgn(delta_sq) <= 0) throw BadParams("delta^2 must be positive");
    if (inflate < 1) throw BadParams("inflate must be >= 1");
    const int n = p.n();
    Rational b_max_sq = compute_b_max_sq(p);
    Rational delta_lb = sqrt_lower(delta_sq);

    Mat added(p.m(), n);
    Vec added_rhs(p.m());
    for (int i = 0; i < p.m(); ++i) {
        for (int j = 0; j < n; ++j) added(i, j) = -p.A()(i, j);
        Rational core = Rational(n) * sqrt_upper(norm_sq(p.row(i)) * b_max_sq) / delta_lb;
        added_rhs[i] = inflate * (core + 1);
    }

    BoundingReport report;
    report.original_m = p.m();
    report.added_rows = added;
    report.added_rhs = added_rhs;
    report.b_max_sq = b_max_sq;
    report.claimed_delta_sq_after = delta_sq;  // sign flips preserve delta

    return {append_rows(p, added, added_rhs), std::move(report)};
}

std::optional<Vec> recession_direction(const Polyhedron& p) {
    const int m = p.m(), n = p.n();
    auto cone_contains = [&](const Vec& u) {
        for (int i = 0; i < m; ++i)
            if (sgn(dot(p.row(i), u)) > 0) return false;
        return true;
    };
    if (n == 1) {
        Vec u{Rational(1)};
        if (cone_contains(u)) return u;
        u[0] = -1;
        if (cone_contains(u)) return u;
        return std::nullopt;
    }
    // An extreme ray of {A x <= 0} has n-1 independent tight rows.
    auto subset = first_combination(n - 1);
    do {
        Mat rows = p.A().select_rows(subset);
        if (rank(rows) != n - 1) continue;
        Vec u = nullspace_vector(rows);
        if (u.is_zero()) continue;
        if (cone_contains(u)) return u;
        u *= Rational(-1);
        if (cone_contains(u)) return u;
    } while (next_combination(subset, m));
    return std::nullopt;
}

bool is_bounded_polyhedron(const Polyhedron& p) { return !recession_direction(p).has_value(); }

}  // namespace shadow
