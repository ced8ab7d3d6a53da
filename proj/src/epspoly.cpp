#include "shadow/epspoly.hpp"

#include <cassert>
#include <cmath>
#include <sstream>

namespace shadow {

EpsPoly::EpsPoly(const Rational& constant) {
    if (sgn(constant) != 0) terms_.push_back({0, constant});
}

EpsPoly EpsPoly::monomial(int degree, const Rational& coeff) {
    assert(degree >= 0);
    EpsPoly p;
    if (sgn(coeff) != 0) p.terms_.push_back({degree, coeff});
    return p;
}

Rational EpsPoly::coeff(int degree) const {
    for (const auto& t : terms_) {
        if (t.degree == degree) return t.coeff;
        if (t.degree > degree) break;
    }
    return Rational(0);
}

EpsPoly& EpsPoly::operator+=(const EpsPoly& o) {
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].degree < o.terms_[j].degree)) {
            merged.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].degree < terms_[i].degree) {
            merged.push_back(o.terms_[j++]);
        } else {
            Rational c = terms_[i].coeff + o.terms_[j].coeff;
            if (sgn(c) != 0) merged.push_back({terms_[i].degree, c});
            ++i, ++j;
        }
    }
    terms_ = std::move(merged);
    return *this;
}

EpsPoly& EpsPoly::operator-=(const EpsPoly& o) {
    EpsPoly neg = o;
    neg *= Rational(-1);
    return *this += neg;
}

EpsPoly& EpsPoly::operator*=(const Rational& r) {
    if (sgn(r) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= r;
    return *this;
}

EpsPoly operator+(EpsPoly a, const EpsPoly& b) { return a += b; }
EpsPoly operator-(EpsPoly a, const EpsPoly& b) { return a -= b; }
EpsPoly operator*(const Rational& r, EpsPoly a) { return a *= r; }

double EpsPoly::eval(double eps) const {
    double s = 0;
    for (const auto& t : terms_) s += t.coeff.get_d() * std::pow(eps, t.degree);
    return s;
}

std::string EpsPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        if (t.degree == 0)
            os << to_string(t.coeff);
        else
            os << to_string(t.coeff) << "*e^" << t.degree;
    }
    return os.str();
}

int lex_sign(const EpsPoly& p) {
    if (p.is_zero()) return 0;
    return sgn(p.terms().front().coeff);
}

int lex_compare(const EpsPoly& p, const EpsPoly& q) {
    // Sign of the lowest-degree monomial of p - q, without materializing it.
    const auto& a = p.terms();
    const auto& b = q.terms();
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].degree < b[j].degree)) return sgn(a[i].coeff);
        if (i == a.size() || b[j].degree < a[i].degree) return -sgn(b[j].coeff);
        int c = cmp(a[i].coeff, b[j].coeff);
        if (c != 0) return c < 0 ? -1 : 1;
        ++i, ++j;
    }
    return 0;
}

EpsVec perturbed_rhs(const Vec& b) {
    EpsVec out(static_cast<size_t>(b.size()));
    for (int i = 0; i < b.size(); ++i) {
        out[static_cast<size_t>(i)] = EpsPoly(b[i]) + EpsPoly::monomial(i + 1, Rational(1));
    }
    return out;
}

void axpy(const Rational& r, const EpsVec& x, EpsVec& y) {
    assert(x.size() == y.size());
    if (sgn(r) == 0) return;
    for (size_t i = 0; i < x.size(); ++i) y[i] += r * x[i];
}

}  // namespace shadow
