#pragma once

#include <compare>
#include <string>
#include <vector>

#include "shadow/linalg.hpp"

namespace shadow {

/// Sparse univariate polynomial in a positive infinitesimal, ordered
/// lexicographically: p < q iff p(eps) < q(eps) for all sufficiently small
/// eps > 0. Monomials are stored with strictly increasing degrees and no
/// zero coefficients; the constant term, if any, comes first.
class EpsPoly {
public:
    struct Term {
        int degree;
        Rational coeff;
        bool operator==(const Term&) const = default;
    };

    EpsPoly() = default;
    explicit EpsPoly(const Rational& constant);
    static EpsPoly monomial(int degree, const Rational& coeff);

    bool is_zero() const { return terms_.empty(); }
    int monomial_count() const { return static_cast<int>(terms_.size()); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Coefficient of eps^degree (zero when absent).
    Rational coeff(int degree) const;

    EpsPoly& operator+=(const EpsPoly& o);
    EpsPoly& operator-=(const EpsPoly& o);
    EpsPoly& operator*=(const Rational& r);

    bool operator==(const EpsPoly& o) const = default;

    /// Numeric evaluation; test oracle only, never used by the solver.
    double eval(double eps) const;

    std::string str() const;  // "c0 + c1*e^d1 + ..."

private:
    std::vector<Term> terms_;
};

EpsPoly operator+(EpsPoly a, const EpsPoly& b);
EpsPoly operator-(EpsPoly a, const EpsPoly& b);
EpsPoly operator*(const Rational& r, EpsPoly a);

/// Sign of p's lowest-degree monomial: the sign of p(eps) for small eps > 0.
int lex_sign(const EpsPoly& p);

/// -1, 0, +1 for p < q, p == q, p > q in the lexicographic order.
int lex_compare(const EpsPoly& p, const EpsPoly& q);

using EpsVec = std::vector<EpsPoly>;

/// b_i + eps^(i+1) for row i (degrees follow the current row order).
EpsVec perturbed_rhs(const Vec& b);

/// y += r * x componentwise.
void axpy(const Rational& r, const EpsVec& x, EpsVec& y);

}  // namespace shadow
