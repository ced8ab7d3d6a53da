#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shadow/errors.hpp"
#include "shadow/linalg.hpp"
#include "shadow/rational.hpp"

using namespace shadow;

namespace {

Rational q(const char* s) { return parse_rational(s); }

// Deterministic small rationals for property tests.
Rational pseudo_rational(std::uint64_t& state) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    int num = static_cast<int>((state >> 33) % 21) - 10;
    int den = 1 + static_cast<int>((state >> 20) % 7);
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Mat random_matrix(int n, std::uint64_t& state) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = pseudo_rational(state);
    return m;
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(to_string(q("3/4")) == "3/4");
    CHECK(to_string(q("-6/8")) == "-3/4");  // canonical form
    CHECK(to_string(q("5")) == "5");
    CHECK(q("2/4") == Rational(1, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), BadParams);
    CHECK_THROWS_AS(parse_rational("abc"), BadParams);
    CHECK_THROWS_AS(parse_rational(""), BadParams);
}

TEST_CASE("exact arithmetic by cross-multiplication") {
    std::uint64_t state = 7;
    for (int rep = 0; rep < 200; ++rep) {
        Rational a = pseudo_rational(state), b = pseudo_rational(state);
        Rational sum = a + b;
        // recompute p/q + r/s = (ps + rq)/(qs)
        Rational expect(a.get_num() * b.get_den() + b.get_num() * a.get_den(),
                        a.get_den() * b.get_den());
        expect.canonicalize();
        CHECK(sum == expect);
    }
}

TEST_CASE("sqrt bounds bracket the true root") {
    std::uint64_t state = 99;
    for (int rep = 0; rep < 100; ++rep) {
        Rational x = pseudo_rational(state);
        x = x * x + Rational(1, 7);  // positive
        Rational lo = sqrt_lower(x), hi = sqrt_upper(x);
        CHECK(lo * lo <= x);
        CHECK(hi * hi >= x);
        CHECK(lo <= hi);
        // relative gap well below 2^-64
        CHECK((hi - lo) * Rational(1) <= hi * Rational(1, Integer(1) << 60));
    }
}

TEST_CASE("rationalize_double hits dyadics exactly") {
    Integer d32 = Integer(1) << 32;
    CHECK(rationalize_double(0.5, d32) == Rational(1, 2));
    CHECK(rationalize_double(0.25, d32) == Rational(1, 4));
    CHECK(rationalize_double(0.0, d32) == Rational(0));
    Rational r = rationalize_double(1.0 / 3.0, default_denominator_bound());
    Rational err = abs(r - Rational(1, 3));
    CHECK(err <= Rational(1, Integer(1) << 50));
}

TEST_CASE("solve_square examples") {
    // identity
    CHECK(solve_square(Mat::identity(2), Vec{Rational(3), Rational(5)}) ==
          Vec{Rational(3), Rational(5)});
    // diagonal
    Mat diag{{Rational(2), Rational(0)}, {Rational(0), Rational(4)}};
    CHECK(solve_square(diag, Vec{Rational(1), Rational(1)}) ==
          Vec{Rational(1, 2), Rational(1, 4)});
    // verified by substitution
    Mat m{{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
    Vec rhs{Rational(2), Rational(0)};
    Vec x = solve_square(m, rhs);
    CHECK(m.times(x) == rhs);
    CHECK(x == Vec{Rational(1), Rational(1)});
    // singular
    Mat sing{{Rational(1), Rational(2)}, {Rational(2), Rational(4)}};
    CHECK_THROWS_AS(solve_square(sing, rhs), SingularMatrix);
}

TEST_CASE("solve_square round trip on random invertible matrices") {
    std::uint64_t state = 2024;
    int done = 0;
    while (done < 50) {
        int n = 2 + static_cast<int>(state % 4);  // up to 5
        Mat m = random_matrix(n, state);
        if (sgn(determinant(m)) == 0) continue;
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = pseudo_rational(state);
        CHECK(solve_square(m, m.times(x)) == x);
        ++done;
    }
}

TEST_CASE("gauss_column_transform puts identity in the basis rows") {
    SUBCASE("identity basis") {
        auto [ap, u] = gauss_column_transform(Mat::identity(2), {0, 1});
        CHECK(ap == Mat::identity(2));
        CHECK(u == Mat::identity(2));
    }
    SUBCASE("scaling") {
        Mat a{{Rational(2), Rational(0)}, {Rational(0), Rational(2)}};
        auto [ap, u] = gauss_column_transform(a, {0, 1});
        CHECK(ap == Mat::identity(2));
        CHECK(u(0, 0) == Rational(1, 2));
        CHECK(u(1, 1) == Rational(1, 2));
    }
    SUBCASE("unit square, non-basis rows flip sign") {
        Mat a{{Rational(1), Rational(0)},
              {Rational(0), Rational(1)},
              {Rational(-1), Rational(0)},
              {Rational(0), Rational(-1)}};
        auto [ap, u] = gauss_column_transform(a, {0, 1});
        CHECK(u == Mat::identity(2));
        CHECK(ap.row(2) == Vec{Rational(-1), Rational(0)});
        CHECK(ap.row(3) == Vec{Rational(0), Rational(-1)});
    }
    SUBCASE("dependent basis rows") {
        Mat a{{Rational(1), Rational(1)}, {Rational(2), Rational(2)}, {Rational(0), Rational(1)}};
        CHECK_THROWS_AS(gauss_column_transform(a, {0, 1}), SingularBasis);
    }
}

TEST_CASE("gauss_column_transform properties on random matrices") {
    std::uint64_t state = 4242;
    int done = 0;
    while (done < 30) {
        int n = 2 + static_cast<int>(state % 3);
        int m = n + 1 + static_cast<int>(state % 4);
        Mat a(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = pseudo_rational(state);
        std::vector<int> basis;
        for (int i = 0; i < n; ++i) basis.push_back(i);
        if (sgn(determinant(a.select_rows(basis))) == 0) continue;
        auto [ap, u] = gauss_column_transform(a, basis);
        CHECK(ap.select_rows(basis) == Mat::identity(n));
        CHECK(u.times(inverse(u)) == Mat::identity(n));
        CHECK(a.times(u) == ap);
        ++done;
    }
}

TEST_CASE("inverse_columns") {
    auto cols = inverse_columns(Mat::identity(3));
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) CHECK(cols[j][i] == (i == j ? 1 : 0));
    }
    Mat diag{{Rational(2), Rational(0)}, {Rational(0), Rational(1, 2)}};
    auto dc = inverse_columns(diag);
    CHECK(dc[0] == Vec{Rational(1, 2), Rational(0)});
    CHECK(dc[1] == Vec{Rational(0), Rational(2)});
    // M * M^{-1} = I
    Mat m{{Rational(1), Rational(0)}, {Rational(1), Rational(1)}};
    Mat inv = inverse(m);
    CHECK(m.times(inv) == Mat::identity(2));
}

TEST_CASE("rank and nullspace") {
    Mat a{{Rational(1), Rational(2), Rational(3)}, {Rational(2), Rational(4), Rational(6)}};
    CHECK(rank(a) == 1);
    Vec u = nullspace_vector(a);
    CHECK_FALSE(u.is_zero());
    CHECK(sgn(dot(a.row(0), u)) == 0);
    CHECK(rank(Mat::identity(4)) == 4);
    CHECK(nullspace_vector(Mat::identity(3)).is_zero());
}
