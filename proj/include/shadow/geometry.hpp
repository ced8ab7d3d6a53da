#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "shadow/errors.hpp"
#include "shadow/linalg.hpp"

namespace shadow {

/// Sorted set of n distinct row indices defining a basis.
class Basis {
public:
    Basis() = default;
    explicit Basis(std::vector<int> indices);

    int size() const { return static_cast<int>(idx_.size()); }
    int operator[](int i) const { return idx_[static_cast<size_t>(i)]; }
    const std::vector<int>& indices() const { return idx_; }
    bool contains(int row) const;

    bool operator==(const Basis&) const = default;
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }

private:
    std::vector<int> idx_;
};

std::string to_string(const Basis& b);

/// Pointed polyhedron {x : A x <= b}. A has full column rank and m >= n.
class Polyhedron {
public:
    Polyhedron(Mat a, Vec b);

    int m() const { return a_.rows(); }
    int n() const { return a_.cols(); }
    const Mat& A() const { return a_; }
    const Vec& b() const { return b_; }
    Vec row(int i) const { return a_.row(i); }

    bool contains(const Vec& x) const;

    /// The vertex defined by a basis: solution of A_B x = b_B.
    Vec vertex_of(const Basis& basis) const;

    /// contains(vertex_of(basis)); throws SingularBasis on dependent rows.
    bool basis_feasible(const Basis& basis) const;

private:
    Mat a_;
    Vec b_;
};

/// delta^2 for n independent rows of an n x n matrix, via the columns of the
/// inverse. Rows need not be normalized; the value is scale-invariant.
Rational delta_sq_of_basis(const Mat& rows);

/// delta^2 for k <= n independent rows, computed inside their span via the
/// Gram matrix. Agrees with delta_sq_of_basis when k == n.
Rational delta_sq_of_rows(const Mat& rows);

/// Minimum delta^2 over all feasible bases, by enumeration. Desk scale.
Rational local_delta_sq(const Polyhedron& p, Basis* witness = nullptr);

/// Minimum delta^2 over all linearly independent row subsets. Desk scale.
Rational global_delta_sq(const Mat& a, std::vector<int>* witness = nullptr);

/// Ball certificate for cone(v_1,...,v_n): center sum(v_i/||v_i||)/n with
/// radius delta/n (both kept in squared form). tau_sq is the radius after
/// rescaling the center onto the unit sphere whenever its norm is exactly
/// representable; otherwise it falls back to radius_sq (center norm <= 1).
struct WidthCertificate {
    Mat generators;            // the certified cone's generator rows
    Vec center;                // rational approximation, for reporting only
    Rational delta_sq;
    Rational radius_sq;        // (delta/n)^2
    Rational tau_sq;           // radius_sq / ||center||^2 when exact
    std::optional<Rational> center_norm_sq;  // exact value when available

    /// Exact dual-vector validation of the certified ball.
    bool verify() const;
};

WidthCertificate width_certificate_of_cone(const Mat& generators);

/// 1/(n Delta_1 Delta_{n-1}) lower bound on delta from subdeterminants of an
/// integral matrix, plus the tau bound 1/(n^2 Delta_1 Delta_{n-1}).
struct SubdetBound {
    Integer delta1;     // max |entry|
    Integer delta_nm1;  // max |(n-1)x(n-1) subdeterminant|
    Rational delta_lb;
    Rational tau_lb;
};

SubdetBound delta_from_subdeterminants(const Mat& a);

/// Exact max |subdeterminant| over all sizes 1..min(m,n). Desk scale.
Integer max_subdeterminant(const Mat& a);

/// Undirected graph on 2n vertices with a designated perfect matching,
/// given as indices into the edge list.
struct MatchingInstance {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> matching;  // edge indices, |matching| == num_vertices/2

    bool is_matching_edge(int e) const;
};

/// Certificate data for the matching-polytope normal cone at chi_M:
/// w = sum of -chi_{delta(U)} over the 3-element odd sets U built from
/// consecutive matched pairs. The checks record how far the construction's
/// guarantees hold on this instance.
struct MatchingCertificate {
    Vec w;                 // integer vector indexed by edges
    Rational w_norm_sq;
    Rational radius;       // claimed inscribed-ball radius (2)
    Rational tau_sq;       // 4 / ||w||^2
    Rational tau_sq_floor; // 1/(9 |E|)
    bool matching_values_ok = false;  // w(e) == -2 on M
    bool off_values_ok = false;       // w(e) in {-4,-6} off M
    bool norm_bound_ok = false;       // ||w||^2 <= 36 |E|
    bool tau_floor_ok = false;        // tau_sq >= tau_sq_floor
    bool cycle_checks_ok = false;     // <v, w> >= |C| for all adjacent matchings
    int cycles_checked = 0;
};

MatchingCertificate matching_width_certificate(const MatchingInstance& g);

/// All perfect matchings of the instance's graph, as sorted edge-index sets.
std::vector<std::vector<int>> enumerate_perfect_matchings(const MatchingInstance& g);

/// True iff c lies in the cone generated by the basis rows, decided by the
/// exact sign of the coefficients solving A_B^T lambda = c.
bool normal_cone_membership(const Polyhedron& p, const Basis& basis, const Vec& c);

}  // namespace shadow
