#include "shadow/rational.hpp"

#include <cmath>

#include "shadow/errors.hpp"

namespace shadow {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw BadParams("empty rational literal");
    for (char c : s) {
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/'))
            throw BadParams("bad rational literal: " + s);
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw BadParams("bad rational literal: " + s);
    if (q.get_den() == 0) throw BadParams("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

bool is_integral(const Rational& r) { return r.get_den() == 1; }

Rational rationalize_double(double x, const Integer& D) {
    if (!std::isfinite(x)) throw BadParams("non-finite double");
    Rational exact(x);  // doubles are dyadic, conversion is exact
    Integer num;
    // round(exact * D) with ties toward +inf; exactness is irrelevant at 1/(2D)
    Rational scaled = exact * Rational(D);
    Rational shifted = scaled + Rational(1, 2);
    mpz_fdiv_q(num.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    Rational out(num, D);
    out.canonicalize();
    return out;
}

Integer default_denominator_bound() {
    Integer d = 1;
    d <<= 64;
    return d;
}

namespace {

// floor(sqrt(p/q) * 2^bits) / 2^bits style bound via integer sqrt of p*q.
Rational sqrt_bound(const Rational& x, unsigned bits, bool upper) {
    if (sgn(x) < 0) throw BadParams("sqrt of negative rational");
    if (sgn(x) == 0) return Rational(0);
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    // sqrt(p/q) = sqrt(p*q)/q
    Integer scaled = p * q;
    scaled <<= 2 * bits;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), scaled.get_mpz_t());  // floor sqrt
    if (upper) root += 1;
    Integer den = q;
    den <<= bits;
    Rational out(root, den);
    out.canonicalize();
    return out;
}

}  // namespace

Rational sqrt_lower(const Rational& x, unsigned bits) { return sqrt_bound(x, bits, false); }
Rational sqrt_upper(const Rational& x, unsigned bits) { return sqrt_bound(x, bits, true); }

std::optional<Rational> exact_sqrt(const Rational& x) {
    if (sgn(x) < 0) return std::nullopt;
    if (sgn(x) == 0) return Rational(0);
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    if (!mpz_perfect_square_p(p.get_mpz_t()) || !mpz_perfect_square_p(q.get_mpz_t()))
        return std::nullopt;
    Integer sp, sq;
    mpz_sqrt(sp.get_mpz_t(), p.get_mpz_t());
    mpz_sqrt(sq.get_mpz_t(), q.get_mpz_t());
    Rational r(sp, sq);
    r.canonicalize();
    return r;
}

Rational round_down_to_denominator(const Rational& x, const Integer& D) {
    Rational scaled = x * Rational(D);
    Integer num;
    mpz_fdiv_q(num.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    Rational out(num, D);
    out.canonicalize();
    return out;
}

Rational round_up_to_denominator(const Rational& x, const Integer& D) {
    Rational scaled = x * Rational(D);
    Integer num;
    mpz_cdiv_q(num.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    Rational out(num, D);
    out.canonicalize();
    return out;
}

}  // namespace shadow
