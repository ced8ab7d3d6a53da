#include "shadow/geometry.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "shadow/combinations.hpp"
#include "shadow/errors.hpp"

namespace shadow {

Basis::Basis(std::vector<int> indices) : idx_(std::move(indices)) {
    std::sort(idx_.begin(), idx_.end());
    for (size_t i = 0; i + 1 < idx_.size(); ++i)
        if (idx_[i] == idx_[i + 1]) throw BadParams("duplicate basis index");
    if (!idx_.empty() && idx_.front() < 0) throw BadParams("negative basis index");
}

bool Basis::contains(int row) const {
    return std::binary_search(idx_.begin(), idx_.end(), row);
}

std::string to_string(const Basis& b) {
    std::ostringstream os;
    os << "{";
    for (int i = 0; i < b.size(); ++i) {
        if (i) os << ",";
        os << b[i];
    }
    os << "}";
    return os.str();
}

Polyhedron::Polyhedron(Mat a, Vec b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() != b_.size()) throw BadParams("row count mismatch between A and b");
    if (a_.cols() < 1 || a_.rows() < a_.cols()) throw BadParams("need m >= n >= 1");
    if (rank(a_) != a_.cols()) throw NotPointed("constraint matrix lacks full column rank");
}

bool Polyhedron::contains(const Vec& x) const {
    for (int i = 0; i < m(); ++i) {
        if (dot(a_.row(i), x) > b_[i]) return false;
    }
    return true;
}

Vec Polyhedron::vertex_of(const Basis& basis) const {
    assert(basis.size() == n());
    Mat ab = a_.select_rows(basis.indices());
    Vec bb(n());
    for (int i = 0; i < n(); ++i) bb[i] = b_[basis[i]];
    try {
        return solve_square(ab, bb);
    } catch (const SingularMatrix&) {
        throw SingularBasis();
    }
}

bool Polyhedron::basis_feasible(const Basis& basis) const { return contains(vertex_of(basis)); }

Rational delta_sq_of_basis(const Mat& rows) {
    assert(rows.rows() == rows.cols());
    std::vector<Vec> cols;
    try {
        cols = inverse_columns(rows);
    } catch (const SingularMatrix&) {
        throw DependentRows();
    }
    // With unit rows v_i = a_i/||a_i||, the dual columns scale to
    // u_j = ||a_j|| * (A^{-1} e_j), so ||u_j||^2 is rational.
    Rational max_usq = 0;
    for (int j = 0; j < rows.rows(); ++j) {
        Rational usq = norm_sq(rows.row(j)) * norm_sq(cols[static_cast<size_t>(j)]);
        if (usq > max_usq) max_usq = usq;
    }
    return 1 / max_usq;
}

Rational delta_sq_of_rows(const Mat& rows) {
    const int k = rows.rows();
    assert(k >= 1);
    Mat gram(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram(i, j) = dot(rows.row(i), rows.row(j));
    Mat ginv;
    try {
        ginv = inverse(gram);
    } catch (const SingularMatrix&) {
        throw DependentRows();
    }
    Rational max_usq = 0;
    for (int j = 0; j < k; ++j) {
        Rational usq = gram(j, j) * ginv(j, j);
        if (usq > max_usq) max_usq = usq;
    }
    return 1 / max_usq;
}

Rational local_delta_sq(const Polyhedron& p, Basis* witness) {
    const int m = p.m(), n = p.n();
    std::optional<Rational> best;
    auto subset = first_combination(n);
    do {
        Mat rows = p.A().select_rows(subset);
        if (sgn(determinant(rows)) == 0) continue;
        Basis basis(subset);
        if (!p.basis_feasible(basis)) continue;
        Rational d = delta_sq_of_basis(rows);
        if (!best || d < *best) {
            best = d;
            if (witness) *witness = basis;
        }
    } while (next_combination(subset, m));
    if (!best) throw NoFeasibleBasis();
    return *best;
}

Rational global_delta_sq(const Mat& a, std::vector<int>* witness) {
    const int m = a.rows(), n = a.cols();
    Rational best = 1;  // singletons always give exactly 1
    if (witness) witness->assign(1, 0);
    for (int k = 2; k <= n; ++k) {
        auto subset = first_combination(k);
        if (static_cast<int>(subset.size()) > m) break;
        do {
            Mat rows = a.select_rows(subset);
            Rational d;
            try {
                d = delta_sq_of_rows(rows);
            } catch (const DependentRows&) {
                continue;
            }
            if (d < best) {
                best = d;
                if (witness) *witness = subset;
            }
        } while (next_combination(subset, m));
    }
    return best;
}

WidthCertificate width_certificate_of_cone(const Mat& generators) {
    const int n = generators.rows();
    assert(generators.cols() == n);
    WidthCertificate cert;
    cert.generators = generators;
    cert.delta_sq = delta_sq_of_basis(generators);  // throws DependentRows
    cert.radius_sq = cert.delta_sq / (n * n);

    // Reporting center: rationalized sum of unit generators over n.
    Vec center(n);
    for (int i = 0; i < n; ++i) center += approx_inv_norm(generators.row(i)) * generators.row(i);
    center *= Rational(1, n);
    cert.center = center;

    // ||vbar||^2 = (1/n^2)(n + 2 sum_{i<j} <a_i,a_j>/sqrt(|a_i|^2 |a_j|^2)),
    // exact only when every pairwise term is rational.
    bool exact = true;
    Rational cross = 0;
    for (int i = 0; i < n && exact; ++i) {
        for (int j = i + 1; j < n && exact; ++j) {
            Rational s = dot(generators.row(i), generators.row(j));
            if (sgn(s) == 0) continue;
            auto root = exact_sqrt(norm_sq(generators.row(i)) * norm_sq(generators.row(j)));
            if (!root) {
                exact = false;
                break;
            }
            cross += s / *root;
        }
    }
    if (exact) {
        Rational nsq = (Rational(n) + 2 * cross) / (n * n);
        cert.center_norm_sq = nsq;
        cert.tau_sq = cert.radius_sq / nsq;
    } else {
        cert.tau_sq = cert.radius_sq;
    }
    return cert;
}

bool WidthCertificate::verify() const {
    const int n = generators.rows();
    std::vector<Vec> cols;
    try {
        cols = inverse_columns(generators);
    } catch (const SingularMatrix&) {
        return false;
    }
    // Ball of radius r around the center vbar fits iff <v_i*, vbar> = 1/n
    // >= ||v_i*|| r for every dual vector; squared: ||u_i||^2 r^2 <= 1/n^2.
    // For the sphere-scaled tau the factor ||vbar||^2 cancels back in.
    Rational one_over_nsq(1, n * n);
    Rational effective_r_sq = center_norm_sq ? tau_sq * (*center_norm_sq) : radius_sq;
    for (int j = 0; j < n; ++j) {
        Rational usq = norm_sq(generators.row(j)) * norm_sq(cols[static_cast<size_t>(j)]);
        if (usq * effective_r_sq > one_over_nsq) return false;
    }
    return true;
}

SubdetBound delta_from_subdeterminants(const Mat& a) {
    const int m = a.rows(), n = a.cols();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_integral(a(i, j))) throw NonIntegralMatrix();

    SubdetBound out;
    out.delta1 = 0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            Integer v = abs(a(i, j).get_num());
            if (v > out.delta1) out.delta1 = v;
        }

    const int k = n - 1;
    out.delta_nm1 = 1;  // 0x0 determinant
    if (k >= 1) {
        out.delta_nm1 = 0;
        auto rows = first_combination(k);
        do {
            auto cols = first_combination(k);
            do {
                Mat sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub(i, j) = a(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
                Integer d = abs(determinant(sub).get_num());
                if (d > out.delta_nm1) out.delta_nm1 = d;
            } while (next_combination(cols, n));
        } while (next_combination(rows, m));
    }
    if (out.delta1 == 0 || out.delta_nm1 == 0)
        throw BadParams("zero subdeterminant bound; matrix is rank deficient");
    out.delta_lb = Rational(1) / (Rational(n) * Rational(out.delta1) * Rational(out.delta_nm1));
    out.tau_lb = out.delta_lb / n;
    return out;
}

Integer max_subdeterminant(const Mat& a) {
    const int m = a.rows(), n = a.cols();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!is_integral(a(i, j))) throw NonIntegralMatrix();
    Integer best = 0;
    for (int k = 1; k <= std::min(m, n); ++k) {
        auto rows = first_combination(k);
        do {
            auto cols = first_combination(k);
            do {
                Mat sub(k, k);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j)
                        sub(i, j) = a(rows[static_cast<size_t>(i)], cols[static_cast<size_t>(j)]);
                Integer d = abs(determinant(sub).get_num());
                if (d > best) best = d;
            } while (next_combination(cols, n));
        } while (next_combination(rows, m));
    }
    return best;
}

bool MatchingInstance::is_matching_edge(int e) const {
    return std::find(matching.begin(), matching.end(), e) != matching.end();
}

namespace {

void validate_matching(const MatchingInstance& g) {
    if (g.num_vertices <= 0 || g.num_vertices % 2 != 0)
        throw NotPerfectMatching("vertex count must be positive and even");
    std::vector<int> cover(static_cast<size_t>(g.num_vertices), 0);
    for (int e : g.matching) {
        if (e < 0 || e >= static_cast<int>(g.edges.size()))
            throw NotPerfectMatching("matching edge index out of range");
        auto [u, v] = g.edges[static_cast<size_t>(e)];
        ++cover[static_cast<size_t>(u)];
        ++cover[static_cast<size_t>(v)];
    }
    for (int c : cover)
        if (c != 1) throw NotPerfectMatching("matching does not cover every vertex exactly once");
}

// Is the symmetric difference a single cycle? Returns its edges if so.
std::optional<std::vector<int>> symmetric_difference_cycle(const MatchingInstance& g,
                                                           const std::vector<int>& m1,
                                                           const std::vector<int>& m2) {
    std::set<int> diff;
    for (int e : m1) diff.insert(e);
    for (int e : m2) {
        if (diff.count(e))
            diff.erase(e);
        else
            diff.insert(e);
    }
    if (diff.empty()) return std::nullopt;
    // Every touched vertex must have degree 2 and the edge set must be connected.
    std::map<int, std::vector<int>> adj;  // vertex -> incident diff edges
    for (int e : diff) {
        auto [u, v] = g.edges[static_cast<size_t>(e)];
        adj[u].push_back(e);
        adj[v].push_back(e);
    }
    for (const auto& [v, es] : adj)
        if (es.size() != 2) return std::nullopt;
    // Walk the cycle from an arbitrary edge.
    std::set<int> seen;
    int start_edge = *diff.begin();
    int at = g.edges[static_cast<size_t>(start_edge)].first;
    int cur = start_edge;
    while (!seen.count(cur)) {
        seen.insert(cur);
        auto [u, v] = g.edges[static_cast<size_t>(cur)];
        at = (u == at) ? v : u;
        const auto& es = adj[at];
        cur = (es[0] == cur) ? es[1] : es[0];
    }
    if (seen.size() != diff.size()) return std::nullopt;  // more than one cycle
    return std::vector<int>(diff.begin(), diff.end());
}

}  // namespace

std::vector<std::vector<int>> enumerate_perfect_matchings(const MatchingInstance& g) {
    std::vector<std::vector<int>> result;
    std::vector<bool> used(static_cast<size_t>(g.num_vertices), false);
    std::vector<int> current;

    auto rec = [&](auto&& self) -> void {
        int v = -1;
        for (int i = 0; i < g.num_vertices; ++i)
            if (!used[static_cast<size_t>(i)]) {
                v = i;
                break;
            }
        if (v < 0) {
            auto sorted = current;
            std::sort(sorted.begin(), sorted.end());
            result.push_back(sorted);
            return;
        }
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            auto [a, b] = g.edges[static_cast<size_t>(e)];
            int other = -1;
            if (a == v && !used[static_cast<size_t>(b)]) other = b;
            if (b == v && !used[static_cast<size_t>(a)]) other = a;
            if (other < 0) continue;
            used[static_cast<size_t>(v)] = used[static_cast<size_t>(other)] = true;
            current.push_back(e);
            self(self);
            current.pop_back();
            used[static_cast<size_t>(v)] = used[static_cast<size_t>(other)] = false;
        }
    };
    rec(rec);
    return result;
}

MatchingCertificate matching_width_certificate(const MatchingInstance& g) {
    validate_matching(g);
    const int n_pairs = g.num_vertices / 2;
    const int num_edges = static_cast<int>(g.edges.size());

    // Label pairs (u_k, v_k) by the matching edges in their given order.
    std::vector<std::pair<int, int>> pairs;
    for (int e : g.matching) pairs.push_back(g.edges[static_cast<size_t>(e)]);

    // The 3-element odd sets: each pair plus one endpoint of the next pair.
    std::vector<std::array<int, 3>> odd_sets;
    for (int k = 0; k < n_pairs; ++k) {
        auto [uk, vk] = pairs[static_cast<size_t>(k)];
        auto [un, vn] = pairs[static_cast<size_t>((k + 1) % n_pairs)];
        odd_sets.push_back({uk, vk, un});
        odd_sets.push_back({uk, vk, vn});
    }

    MatchingCertificate cert;
    cert.w = Vec(num_edges);
    for (const auto& u_set : odd_sets) {
        auto in_set = [&](int v) { return v == u_set[0] || v == u_set[1] || v == u_set[2]; };
        for (int e = 0; e < num_edges; ++e) {
            auto [a, b] = g.edges[static_cast<size_t>(e)];
            if (in_set(a) != in_set(b)) cert.w[e] -= 1;  // a_U = -chi_{delta(U)}
        }
    }

    cert.w_norm_sq = norm_sq(cert.w);
    cert.radius = 2;
    cert.tau_sq = Rational(4) / cert.w_norm_sq;
    cert.tau_sq_floor = Rational(1, 9 * num_edges);

    cert.matching_values_ok = true;
    cert.off_values_ok = true;
    for (int e = 0; e < num_edges; ++e) {
        if (g.is_matching_edge(e)) {
            if (cert.w[e] != -2) cert.matching_values_ok = false;
        } else if (cert.w[e] != -4 && cert.w[e] != -6) {
            cert.off_values_ok = false;
        }
    }
    cert.norm_bound_ok = cert.w_norm_sq <= Rational(36 * num_edges);
    cert.tau_floor_ok = cert.tau_sq >= cert.tau_sq_floor;

    // Adjacent matchings: symmetric difference is a single alternating
    // cycle C; the inner normal direction v must satisfy <v, w> >= |C|.
    cert.cycle_checks_ok = true;
    std::vector<int> m_sorted = g.matching;
    std::sort(m_sorted.begin(), m_sorted.end());
    for (const auto& other : enumerate_perfect_matchings(g)) {
        if (other == m_sorted) continue;
        auto cycle = symmetric_difference_cycle(g, m_sorted, other);
        if (!cycle) continue;
        ++cert.cycles_checked;
        Rational inner = 0;
        for (int e : *cycle) inner += g.is_matching_edge(e) ? cert.w[e] : -cert.w[e];
        if (inner < Rational(static_cast<int>(cycle->size()))) cert.cycle_checks_ok = false;
    }
    return cert;
}

bool normal_cone_membership(const Polyhedron& p, const Basis& basis, const Vec& c) {
    assert(basis.size() == p.n());
    Mat abt = p.A().select_rows(basis.indices()).transposed();
    Vec lambda;
    try {
        lambda = solve_square(abt, c);
    } catch (const SingularMatrix&) {
        throw SingularBasis();
    }
    for (int i = 0; i < lambda.size(); ++i)
        if (sgn(lambda[i]) < 0) return false;
    return true;
}

}  // namespace shadow
