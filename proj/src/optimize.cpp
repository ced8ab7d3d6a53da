#include "shadow/optimize.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace shadow {

Vec initial_objective(const Polyhedron& p, const Basis& basis) {
    if (!p.basis_feasible(basis)) throw InfeasibleBasis();
    Vec c(p.n());
    for (int i : basis) {
        Vec row = p.row(i);
        c += approx_inv_norm(row) * row;
    }
    if (!normal_cone_membership(p, basis, c))
        throw Error("rationalized objective escaped the basis cone");
    return c;
}

int snap_choose_index(const std::vector<std::pair<int, Rational>>& lambda_signed_sq, int n) {
    const Rational threshold(1, n * n);  // lambda > 1/n in squared form
    int best = -1;
    Rational best_val;
    for (const auto& [idx, val] : lambda_signed_sq) {
        if (val <= threshold) continue;
        if (best < 0 || val > best_val || (val == best_val && idx < best)) {
            best = idx;
            best_val = val;
        }
    }
    if (best < 0) throw NoLargeCoefficient();
    return best;
}

Vec FacetProjection::lift_point(const Vec& y) const {
    Vec x = origin;
    for (int t = 0; t < frame.rows(); ++t) x += y[t] * frame.row(t);
    return x;
}

Vec FacetProjection::project_vector(const Vec& v) const {
    Vec y(frame.rows());
    for (int t = 0; t < frame.rows(); ++t) y[t] = dot(frame.row(t), v);
    return y;
}

FacetProjection project_facet(const Polyhedron& p, int row) {
    const int n = p.n();
    Vec a = p.row(row);
    Rational a_nsq = norm_sq(a);
    if (sgn(a_nsq) == 0) throw ZeroRow();

    Vec origin = (p.b()[row] / a_nsq) * a;

    // Orthogonal frame of the hyperplane a^T x = 0 by Gram-Schmidt over the
    // projected standard basis, each vector rescaled to near-unit norm so
    // the frame coordinates stay metrically faithful.
    Mat frame(n - 1, n);
    int have = 0;
    for (int t = 0; t < n && have < n - 1; ++t) {
        Vec v(n);
        v[t] = 1;
        v -= (a[t] / a_nsq) * a;
        for (int q = 0; q < have; ++q) {
            Vec fq = frame.row(q);
            Rational coef = dot(v, fq) / norm_sq(fq);
            v -= coef * fq;
        }
        if (v.is_zero()) continue;
        v *= approx_inv_norm(v);
        frame.set_row(have++, v);
    }
    if (have != n - 1) throw std::logic_error("facet frame construction fell short");

    std::vector<Vec> kept_rows;
    std::vector<Rational> rhs;
    std::vector<int> row_map;
    for (int j = 0; j < p.m(); ++j) {
        if (j == row) continue;
        Vec aj = p.row(j);
        Vec rj(n - 1);
        for (int t = 0; t < n - 1; ++t) rj[t] = dot(frame.row(t), aj);
        Rational bj = p.b()[j] - dot(aj, origin);
        if (rj.is_zero()) {
            if (sgn(bj) < 0) throw Error("facet system is infeasible");
            continue;  // constraint parallel to the facet normal, vacuous here
        }
        kept_rows.push_back(rj);
        rhs.push_back(bj);
        row_map.push_back(j);
    }
    Mat proj_a(static_cast<int>(kept_rows.size()), n - 1);
    Vec proj_b(static_cast<int>(kept_rows.size()));
    for (size_t i = 0; i < kept_rows.size(); ++i) {
        proj_a.set_row(static_cast<int>(i), kept_rows[i]);
        proj_b[static_cast<int>(i)] = rhs[i];
    }
    return FacetProjection{Polyhedron(std::move(proj_a), std::move(proj_b)), std::move(row_map),
                           std::move(frame), std::move(origin), row};
}

namespace {

double level_pivot_bound(int dim, double delta, double seg_norm) {
    // 2 (2n^2/d ln(2n/d) + n ||d-c||/d + 2n^2/d ln(2n^3/d)) per level
    double n = dim;
    return 2.0 * (2.0 * n * n / delta * std::log(2.0 * n / delta) + n * seg_norm / delta +
                  2.0 * n * n / delta * std::log(2.0 * n * n * n / delta));
}

Basis phase2_recurse(const Polyhedron& p, const Rational& delta_sq, const Basis& start,
                     const Vec& d_in, Rng& rng, const Phase2Options& opts) {
    const int n = p.n();
    if (d_in.is_zero()) throw BadParams("objective must be nonzero");
    if (!p.basis_feasible(start)) throw InfeasibleBasis();

    // d <- 2 d/||d|| with a rationalized inverse norm, exact thereafter.
    Vec d = d_in;
    {
        Rational s = 2 * approx_inv_norm(d_in);
        d *= s;
    }
    Vec c = initial_objective(p, start);

    const Rational delta_lb = sqrt_lower(delta_sq);
    const Rational shrink = delta_lb / (2 * n * n * n);

    ShadowResult chain;
    Vec d_tilde;
    int retries = 0;
    while (true) {
        Vec x(n);
        if (!opts.force_zero_x) {
            ConeSample s = sample_conditioned(n, rng, 2.0 * n);
            x = rationalize(s, default_denominator_bound());
        }
        d_tilde = d + shrink * x;
        std::vector<Vec> waypoints{c, c + x, d + x, d_tilde};
        try {
            chain = follow_segment_chain(p, waypoints, start);
            break;
        } catch (const DegenerateSegment&) {
            if (opts.force_zero_x || ++retries > opts.max_degenerate_retries)
                throw RetriesExhausted("degenerate segments persisted across re-randomizations");
        }
    }

    if (opts.stats) {
        LevelStats ls;
        ls.dim = n;
        ls.pivots = chain.trace.pivots();
        ls.retries = retries;
        Vec seg = d - c;
        ls.segment_norm = std::sqrt(norm_sq(seg).get_d());
        ls.delta = std::sqrt(delta_sq.get_d());
        ls.pivot_bound = level_pivot_bound(n, ls.delta, ls.segment_norm);
        opts.stats->push_back(ls);
    }
    if (opts.pivot_counter) *opts.pivot_counter += static_cast<std::uint64_t>(chain.trace.pivots());
    if (opts.trace) opts.trace->append(chain.trace);

    // Decompose d_tilde over the unit basis rows; coefficients carried as
    // sign(mu_i) mu_i^2 ||a_i||^2 = sign(lambda_i) lambda_i^2.
    const Basis& bhat = chain.basis;
    Vec mu = solve_square(p.A().select_rows(bhat.indices()).transposed(), d_tilde);
    std::vector<std::pair<int, Rational>> coeffs;
    for (int k = 0; k < n; ++k) {
        int row = bhat[k];
        Rational ssq = mu[k] * mu[k] * norm_sq(p.row(row));
        if (sgn(mu[k]) < 0) ssq = -ssq;
        coeffs.emplace_back(row, ssq);
    }

    int istar;
    try {
        istar = snap_choose_index(coeffs, n);
    } catch (const NoLargeCoefficient&) {
        throw DeltaOverestimated("no conic coefficient exceeded 1/n");
    }

    Basis result;
    if (n == 1) {
        result = Basis({istar});
    } else {
        FacetProjection proj = project_facet(p, istar);
        std::vector<int> sub_rows;
        for (int r : bhat)
            if (r != istar) {
                auto it = std::find(proj.row_map.begin(), proj.row_map.end(), r);
                if (it == proj.row_map.end())
                    throw std::logic_error("basis row lost in facet projection");
                sub_rows.push_back(static_cast<int>(it - proj.row_map.begin()));
            }
        Basis sub_start(sub_rows);
        if (!proj.p.basis_feasible(sub_start))
            throw std::logic_error("projected basis lost feasibility");

        Vec d_proj = proj.project_vector(d);
        std::vector<int> lifted;
        if (d_proj.is_zero()) {
            // d is parallel to the fixed facet normal: every vertex of the
            // facet is optimal, keep the basis we already have.
            for (int r : sub_rows) lifted.push_back(proj.row_map[static_cast<size_t>(r)]);
        } else {
            Basis sub_opt = phase2_recurse(proj.p, delta_sq, sub_start, d_proj, rng, opts);
            for (int r : sub_opt) lifted.push_back(proj.row_map[static_cast<size_t>(r)]);
        }
        lifted.push_back(istar);
        result = Basis(lifted);
    }

    // The lifted basis is re-verified rather than trusted; failure means the
    // delta guess was too optimistic.
    try {
        if (!p.basis_feasible(result) || !normal_cone_membership(p, result, d_in))
            throw DeltaOverestimated("lifted basis failed final verification");
    } catch (const SingularBasis&) {
        throw DeltaOverestimated("lifted basis is rank deficient");
    }
    return result;
}

}  // namespace

Basis phase2_optimize(const Polyhedron& p, const Rational& delta_sq, const Basis& start,
                      const Vec& d, Rng& rng, const Phase2Options& opts) {
    if (sgn(delta_sq) <= 0) throw BadParams("delta^2 must be positive");
    return phase2_recurse(p, delta_sq, start, d, rng, opts);
}

Basis phase2_with_delta_search(const Polyhedron& p, Rational delta_sq, const Basis& start,
                               const Vec& d, Rng& rng, const Phase2Options& opts,
                               int max_halvings) {
    for (int attempt = 0;; ++attempt) {
        try {
            return phase2_optimize(p, delta_sq, start, d, rng, opts);
        } catch (const DeltaOverestimated&) {
            if (attempt >= max_halvings) throw;
            delta_sq /= 4;  // halve delta
        }
    }
}

}  // namespace shadow
