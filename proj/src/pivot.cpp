#include "shadow/pivot.hpp"

#include <algorithm>
#include <cassert>

namespace shadow {

void PivotTrace::append(const PivotTrace& other) {
    leg_offsets.push_back(records.size());
    records.insert(records.end(), other.records.begin(), other.records.end());
    ops_estimate += other.ops_estimate;
}

Reordered reorder_for_perturbation(const Polyhedron& p, const Basis& basis) {
    if (basis.size() != p.n()) throw BadParams("basis size must equal dimension");
    if (!p.basis_feasible(basis)) throw InfeasibleBasis();

    const int m = p.m();
    std::vector<int> perm;  // non-basis rows first, basis rows last
    perm.reserve(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i)
        if (!basis.contains(i)) perm.push_back(i);
    for (int i : basis) perm.push_back(i);

    Mat a = p.A().select_rows(perm);
    Vec b(m);
    for (int i = 0; i < m; ++i) b[i] = p.b()[perm[static_cast<size_t>(i)]];

    std::vector<int> last(static_cast<size_t>(p.n()));
    for (int k = 0; k < p.n(); ++k) last[static_cast<size_t>(k)] = m - p.n() + k;
    return Reordered{Polyhedron(std::move(a), std::move(b)), Basis(last), std::move(perm)};
}

ShadowResult shadow_simplex(const Polyhedron& p, const Vec& c, const Vec& d, const Basis& start,
                            const ShadowOptions& opts) {
    const int m = p.m(), n = p.n();
    if (c.size() != n || d.size() != n) throw BadParams("objective dimension mismatch");

    if (!normal_cone_membership(p, start, c))
        throw InfeasibleStart("start basis is not optimal for the initial objective");

    Reordered re = [&] {
        try {
            return reorder_for_perturbation(p, start);
        } catch (const InfeasibleBasis&) {
            throw InfeasibleStart("start basis is not feasible");
        }
    }();
    const std::vector<int>& perm = re.perm;

    // Basis positions are ordered: position k corresponds to column k after
    // elimination. Initially rows m-n..m-1.
    std::vector<int> basis_rows(re.basis.indices());
    auto [ap, u] = gauss_column_transform(re.p.A(), basis_rows);
    Mat ut = u.transposed();
    Vec tc = ut.times(c);
    Vec td = ut.times(d);

    const EpsVec beta = perturbed_rhs(re.p.b());
    std::vector<bool> in_basis(static_cast<size_t>(m), false);
    for (int r : basis_rows) in_basis[static_cast<size_t>(r)] = true;

    PivotTrace trace;
    trace.ops_estimate = static_cast<std::uint64_t>(m) * n * n;

    while (true) {
        if (trace.records.size() >= opts.max_pivots) throw Error("pivot limit exceeded");

        // Leaving position: first component of the interpolated objective to
        // reach zero among those decreasing in lambda.
        int best_k = -1;
        int ties = 0;
        Rational best_lambda;
        for (int k = 0; k < n; ++k) {
            if (tc[k] <= td[k]) continue;
            Rational lk = tc[k] / (tc[k] - td[k]);
            if (best_k < 0 || lk < best_lambda) {
                best_k = k;
                best_lambda = lk;
                ties = 1;
            } else if (lk == best_lambda) {
                ++ties;
            }
        }
        if (best_k < 0 || best_lambda >= 1) break;
        if (ties > 1) throw DegenerateSegment("two basis rows cross at the same lambda");
        if (!trace.records.empty() && best_lambda <= trace.records.back().lambda)
            throw DegenerateSegment("lambda* failed to increase");

        // Entering row: lexicographic ratio test over the perturbed slacks.
        int enter = -1;
        EpsPoly best_ratio;
        for (int j = 0; j < m; ++j) {
            if (in_basis[static_cast<size_t>(j)]) continue;
            if (sgn(ap(j, best_k)) >= 0) continue;
            EpsPoly num;
            for (int k = 0; k < n; ++k) {
                const Rational& ajk = ap(j, k);
                if (sgn(ajk) != 0) num += ajk * beta[static_cast<size_t>(basis_rows[static_cast<size_t>(k)])];
            }
            num -= beta[static_cast<size_t>(j)];
            assert(num.monomial_count() <= n + 2);
            assert(num.terms().empty() || num.terms().back().degree <= m);
            assert(lex_sign(num) <= 0);  // current basis is feasible for P_eps
            EpsPoly ratio = (1 / ap(j, best_k)) * num;
            if (enter < 0) {
                enter = j;
                best_ratio = std::move(ratio);
                continue;
            }
            int cmp_result = lex_compare(ratio, best_ratio);
            // Exact ties cannot happen: the perturbed system is simple and
            // each ratio carries a monomial unique to its row.
            if (cmp_result == 0) throw std::logic_error("perturbed ratio tie");
            if (cmp_result < 0) {
                enter = j;
                best_ratio = std::move(ratio);
            }
        }
        if (enter < 0) {
            // d exits the support of the normal fan along edge -e_{best_k}.
            std::vector<int> orig;
            for (int r : basis_rows) orig.push_back(perm[static_cast<size_t>(r)]);
            Vec ray = u.col(best_k);
            ray *= Rational(-1);
            throw UnboundedDirection(Basis(orig), std::move(ray));
        }

        // Pivot: replace the basis row at position best_k and restore
        // A'_B = I with a rank-1 column update.
        int leave = basis_rows[static_cast<size_t>(best_k)];
        Vec w(n);
        {
            const Rational& pivot_entry = ap(enter, best_k);
            for (int t = 0; t < n; ++t) {
                w[t] = -ap(enter, t);
                if (t == best_k) w[t] += 1;
                w[t] /= pivot_entry;
            }
        }
        for (int r = 0; r < m; ++r) {
            const Rational f = ap(r, best_k);
            if (sgn(f) == 0) continue;
            for (int t = 0; t < n; ++t) ap(r, t) += f * w[t];
        }
        for (int r = 0; r < n; ++r) {
            const Rational f = u(r, best_k);
            if (sgn(f) == 0) continue;
            for (int t = 0; t < n; ++t) u(r, t) += f * w[t];
        }
        {
            const Rational fc = tc[best_k], fd = td[best_k];
            for (int t = 0; t < n; ++t) {
                tc[t] += w[t] * fc;
                td[t] += w[t] * fd;
            }
        }
        in_basis[static_cast<size_t>(leave)] = false;
        in_basis[static_cast<size_t>(enter)] = true;
        basis_rows[static_cast<size_t>(best_k)] = enter;
        trace.ops_estimate += static_cast<std::uint64_t>(m) * n;

        std::vector<int> after;
        for (int r : basis_rows) after.push_back(perm[static_cast<size_t>(r)]);
        trace.records.push_back(PivotRecord{best_lambda, perm[static_cast<size_t>(leave)],
                                            perm[static_cast<size_t>(enter)], Basis(after)});
    }

    std::vector<int> final_rows;
    for (int r : basis_rows) final_rows.push_back(perm[static_cast<size_t>(r)]);
    return ShadowResult{Basis(final_rows), std::move(trace)};
}

ShadowResult follow_segment_chain(const Polyhedron& p, const std::vector<Vec>& waypoints,
                                  const Basis& start, const ShadowOptions& opts) {
    if (waypoints.empty()) throw BadParams("need at least one waypoint");
    ShadowResult out;
    out.basis = start;
    for (size_t i = 0; i + 1 < waypoints.size(); ++i) {
        ShadowResult leg = shadow_simplex(p, waypoints[i], waypoints[i + 1], out.basis, opts);
        out.trace.append(leg.trace);
        out.basis = leg.basis;
    }
    return out;
}

}  // namespace shadow
