#include "shadow/feasibility.hpp"

#include <algorithm>
#include <cassert>

namespace shadow {

namespace {

// Greedy maximal independent subset of the tight rows, input order.
std::vector<int> independent_tight_rows(const Polyhedron& p, const Vec& x) {
    std::vector<int> chosen;
    for (int i = 0; i < p.m(); ++i) {
        if (dot(p.row(i), x) != p.b()[i]) continue;
        chosen.push_back(i);
        if (rank(p.A().select_rows(chosen)) < static_cast<int>(chosen.size()))
            chosen.pop_back();
        if (static_cast<int>(chosen.size()) == p.n()) break;
    }
    return chosen;
}

}  // namespace

Basis ray_cast_to_basis(const Polyhedron& p, const Vec& x0) {
    if (!p.contains(x0)) throw BadParams("ray casting requires a feasible start point");
    const int n = p.n();
    Vec x = x0;
    std::vector<int> tight = independent_tight_rows(p, x);

    while (static_cast<int>(tight.size()) < n) {
        Vec u = tight.empty() ? Vec(n) : nullspace_vector(p.A().select_rows(tight));
        if (tight.empty()) u[0] = 1;
        if (u.is_zero()) throw NotPointed("tight rows already have full rank");

        // Largest feasible step along +u; fall back to -u when unbounded.
        auto max_step = [&](const Vec& dir) -> std::optional<Rational> {
            std::optional<Rational> best;
            for (int j = 0; j < p.m(); ++j) {
                Rational adv = dot(p.row(j), dir);
                if (sgn(adv) <= 0) continue;
                Rational t = (p.b()[j] - dot(p.row(j), x)) / adv;
                if (!best || t < *best) best = t;
            }
            return best;
        };
        auto step = max_step(u);
        if (!step) {
            u *= Rational(-1);
            step = max_step(u);
            if (!step) throw NotPointed("feasible line found; polyhedron is not pointed");
        }
        x += *step * u;
        tight = independent_tight_rows(p, x);
    }
    return Basis(tight);
}

Phase1Result phase1_subdeterminant(const Polyhedron& p, const Integer& Delta, Rng& rng) {
    if (Delta < 1) throw BadParams("subdeterminant bound must be >= 1");
    const int n = p.n(), m = p.m();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_integral(p.A()(i, j))) throw NonIntegralMatrix();

    // Auxiliary LP: min s subject to <a_i, x> - s <= b_i and s >= 0.
    Mat aux_a(m + 1, n + 1);
    Vec aux_b(m + 1);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) aux_a(i, j) = p.A()(i, j);
        aux_a(i, n) = -1;
        aux_b[i] = p.b()[i];
    }
    aux_a(m, n) = -1;
    aux_b[m] = 0;
    Polyhedron aux(std::move(aux_a), std::move(aux_b));

    // Start at x = 0 with s just large enough to cover the most negative b_i.
    Vec start(n + 1);
    for (int i = 0; i < m; ++i)
        if (-p.b()[i] > start[n]) start[n] = -p.b()[i];

    Basis aux_basis = ray_cast_to_basis(aux, start);

    // The aux matrix has entries bounded by Delta and n x n subdeterminants
    // bounded by n Delta, so the determinant bound gives a global delta of
    // 1/((n+1) Delta n Delta).
    Integer delta_squared = Delta * Delta;
    Rational delta_aux = Rational(1) / (Rational(n) * Rational(n + 1) * Rational(delta_squared));
    Rational delta_aux_sq = delta_aux * delta_aux;

    auto [bounded, report] = bound_global(aux, delta_aux_sq);

    Vec objective(n + 1);
    objective[n] = -1;  // maximize -s

    Phase1Result result;
    Phase2Options opts;
    opts.pivot_counter = &result.pivots;
    Basis opt = phase2_with_delta_search(bounded, delta_aux_sq, aux_basis, objective, rng, opts);
    Vec v = bounded.vertex_of(opt);
    Rational s_opt = v[n];

    if (sgn(s_opt) != 0) {
        result.infeasible = InfeasibleCertificate{-1, s_opt, Rational(0)};
        return result;
    }
    Vec x(n);
    for (int j = 0; j < n; ++j) x[j] = v[j];
    result.basis = ray_cast_to_basis(p, x);
    return result;
}

Phase1Result phase1_global_delta(const Polyhedron& p, const Rational& delta_sq, Rng& rng) {
    const int n = p.n(), m = p.m();
    Phase1Result result;

    // Initial basis of A: first n independent rows; the unique feasible
    // basis of the square subsystem they define.
    std::vector<int> sub_rows;
    for (int i = 0; i < m && static_cast<int>(sub_rows.size()) < n; ++i) {
        sub_rows.push_back(i);
        if (rank(p.A().select_rows(sub_rows)) < static_cast<int>(sub_rows.size()))
            sub_rows.pop_back();
    }
    assert(static_cast<int>(sub_rows.size()) == n);

    std::vector<int> basis_local(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) basis_local[static_cast<size_t>(k)] = k;

    auto make_sub = [&]() {
        Vec b(static_cast<int>(sub_rows.size()));
        for (size_t i = 0; i < sub_rows.size(); ++i) b[static_cast<int>(i)] = p.b()[sub_rows[i]];
        return Polyhedron(p.A().select_rows(sub_rows), std::move(b));
    };

    Polyhedron sub = make_sub();
    Basis basis(basis_local);

    for (int i = 0; i < m; ++i) {
        if (std::find(sub_rows.begin(), sub_rows.end(), i) != sub_rows.end()) continue;
        Vec ai = p.row(i);

        if (ai.is_zero()) {
            if (sgn(p.b()[i]) < 0) {
                result.infeasible = InfeasibleCertificate{i, Rational(0), p.b()[i]};
                return result;
            }
            sub_rows.push_back(i);  // vacuous row, keep the current basis
            sub = make_sub();
            continue;
        }

        // gamma = min <a_i, x> over the partial system, probed through
        // growing LP-equivalent boxes; equal optima across two box sizes
        // certify that the minimum is genuine rather than box-limited.
        Vec objective = Rational(-1) * ai;
        std::optional<Rational> prev_gamma;
        std::optional<Vec> point;
        Rational inflate = 1;
        for (int round = 0; round < 64; ++round) {
            auto [boxed, report] = bound_global(sub, delta_sq, inflate);
            Phase2Options opts;
            opts.pivot_counter = &result.pivots;
            Basis opt = phase2_with_delta_search(boxed, delta_sq, basis, objective, rng, opts);
            Vec v = boxed.vertex_of(opt);
            Rational gamma = dot(ai, v);
            if (gamma <= p.b()[i]) {
                point = v;
                break;
            }
            if (prev_gamma && gamma == *prev_gamma) {
                result.infeasible = InfeasibleCertificate{i, gamma, p.b()[i]};
                return result;
            }
            prev_gamma = gamma;
            inflate *= 2;
        }
        if (!point) throw Error("box growth failed to resolve an unbounded objective");

        sub_rows.push_back(i);
        sub = make_sub();
        basis = ray_cast_to_basis(sub, *point);
    }

    // Map the final basis through sub_rows back to original row indices.
    std::vector<int> original;
    for (int k : basis) original.push_back(sub_rows[static_cast<size_t>(k)]);
    Basis final_basis(original);
    if (!p.basis_feasible(final_basis)) throw std::logic_error("phase 1 produced an infeasible basis");
    result.basis = final_basis;
    return result;
}

}  // namespace shadow
