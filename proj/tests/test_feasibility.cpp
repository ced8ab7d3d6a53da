#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shadow/feasibility.hpp"
#include "shadow/harness.hpp"

using namespace shadow;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Polyhedron unit_square() {
    Mat a{{q("1"), q("0")}, {q("0"), q("1")}, {q("-1"), q("0")}, {q("0"), q("-1")}};
    Vec b{q("1"), q("1"), q("0"), q("0")};
    return Polyhedron(std::move(a), std::move(b));
}

// Exhaustive feasibility oracle: a pointed polyhedron is nonempty iff some
// basis subset yields a feasible vertex.
bool feasible_by_enumeration(const Polyhedron& p) { return !enumerate_vertices(p).empty(); }

// Random integral instance; roughly a fifth come out infeasible.
Polyhedron random_integral_instance(std::uint64_t seed, int n, int m) {
    Rng rng(derive_seed(seed, 0xfea5));
    while (true) {
        Mat a(m, n);
        Vec b(m);
        for (int i = 0; i < m; ++i) {
            bool nonzero = false;
            for (int j = 0; j < n; ++j) {
                int e = static_cast<int>(rng() % 5) - 2;
                a(i, j) = e;
                nonzero = nonzero || e != 0;
            }
            if (!nonzero) a(i, 0) = 1;
            b[i] = Rational(static_cast<int>(rng() % 7) - 2);  // in [-2, 4]
        }
        if (rank(a) != n) continue;
        return Polyhedron(std::move(a), std::move(b));
    }
}

}  // namespace

TEST_CASE("ray casting to a basis") {
    Polyhedron sq = unit_square();
    SUBCASE("a vertex stays put") {
        Basis b = ray_cast_to_basis(sq, Vec{q("1"), q("1")});
        CHECK(b == Basis({0, 1}));
        CHECK(sq.vertex_of(b) == Vec{q("1"), q("1")});
    }
    SUBCASE("interior point reaches some vertex") {
        Basis b = ray_cast_to_basis(sq, Vec{q("1/2"), q("1/2")});
        CHECK(sq.basis_feasible(b));
        Vec v = sq.vertex_of(b);
        for (int i : b) CHECK(dot(sq.row(i), v) == sq.b()[i]);
    }
    SUBCASE("edge midpoint needs one cast") {
        Basis b = ray_cast_to_basis(sq, Vec{q("1"), q("1/2")});
        CHECK(sq.basis_feasible(b));
        // the tight row x <= 1 must be kept
        CHECK(b.contains(0));
    }
    SUBCASE("infeasible start rejected") {
        CHECK_THROWS_AS(ray_cast_to_basis(sq, Vec{q("2"), q("0")}), BadParams);
    }
}

TEST_CASE("phase1_subdeterminant examples") {
    SUBCASE("unit square is feasible immediately") {
        Rng rng(1);
        Phase1Result r = phase1_subdeterminant(unit_square(), 1, rng);
        REQUIRE(r.feasible());
        CHECK(unit_square().basis_feasible(*r.basis));
    }
    SUBCASE("1D infeasible pair x <= -1, -x <= -1") {
        Mat a{{q("1")}, {q("-1")}};
        Vec b{q("-1"), q("-1")};
        Polyhedron p(std::move(a), std::move(b));
        Rng rng(2);
        Phase1Result r = phase1_subdeterminant(p, 1, rng);
        REQUIRE_FALSE(r.feasible());
        CHECK(r.infeasible->row == -1);
        CHECK(r.infeasible->gamma == 1);  // optimal slack
    }
    SUBCASE("non-integral matrix rejected") {
        Mat a{{q("1/2"), q("0")}, {q("0"), q("1")}};
        Vec b{q("1"), q("1")};
        Rng rng(3);
        CHECK_THROWS_AS(phase1_subdeterminant(Polyhedron(std::move(a), std::move(b)), 1, rng),
                        NonIntegralMatrix);
    }
}

TEST_CASE("phase1_global_delta examples") {
    SUBCASE("square system: zero rounds") {
        Mat a{{q("1"), q("0")}, {q("0"), q("1")}};
        Vec b{q("1"), q("1")};
        Polyhedron p(std::move(a), std::move(b));
        Rng rng(4);
        Phase1Result r = phase1_global_delta(p, global_delta_sq(p.A()), rng);
        REQUIRE(r.feasible());
        CHECK(*r.basis == Basis({0, 1}));
        CHECK(r.pivots == 0);
    }
    SUBCASE("unit square from its first two rows") {
        Polyhedron sq = unit_square();
        Rng rng(5);
        Phase1Result r = phase1_global_delta(sq, global_delta_sq(sq.A()), rng);
        REQUIRE(r.feasible());
        CHECK(sq.basis_feasible(*r.basis));
    }
    SUBCASE("infeasible triangle detected at the third row") {
        // x >= 1, y >= 1, x + y <= 1
        Mat a{{q("-1"), q("0")}, {q("0"), q("-1")}, {q("1"), q("1")}};
        Vec b{q("-1"), q("-1"), q("1")};
        Polyhedron p(std::move(a), std::move(b));
        Rng rng(6);
        Phase1Result r = phase1_global_delta(p, global_delta_sq(p.A()), rng);
        REQUIRE_FALSE(r.feasible());
        CHECK(r.infeasible->row == 2);
        CHECK(r.infeasible->gamma == 2);  // min x+y over x,y >= 1
        CHECK(r.infeasible->rhs == 1);
    }
}

TEST_CASE("phase 1 verdicts match exhaustive enumeration") {
    int done = 0, infeasible_seen = 0;
    for (std::uint64_t seed = 0; done < 40; ++seed) {
        int n = 2 + static_cast<int>(seed % 2);
        int m = n + 2 + static_cast<int>(seed % 4);
        Polyhedron p = random_integral_instance(seed, n, m);
        bool expect = feasible_by_enumeration(p);
        if (!expect) ++infeasible_seen;

        Rng rng1(derive_seed(seed, 11));
        Phase1Result global = phase1_global_delta(p, global_delta_sq(p.A()), rng1);
        CHECK(global.feasible() == expect);
        if (global.feasible()) CHECK(p.basis_feasible(*global.basis));

        Rng rng2(derive_seed(seed, 22));
        Phase1Result subdet = phase1_subdeterminant(p, max_subdeterminant(p.A()), rng2);
        CHECK(subdet.feasible() == expect);
        if (subdet.feasible()) CHECK(p.basis_feasible(*subdet.basis));
        ++done;
    }
    CHECK(infeasible_seen >= 3);  // the family genuinely mixes both verdicts
}

TEST_CASE("phase 1 handles vacuous and violated zero rows") {
    // a zero row with b >= 0 is vacuous, with b < 0 instantly infeasible
    Mat a{{q("1"), q("0")}, {q("0"), q("1")}, {q("0"), q("0")}};
    Vec b{q("1"), q("1"), q("2")};
    Polyhedron fine(std::move(a), std::move(b));
    Rng rng(7);
    CHECK(phase1_global_delta(fine, global_delta_sq(fine.A()), rng).feasible());

    Mat a2{{q("1"), q("0")}, {q("0"), q("1")}, {q("0"), q("0")}};
    Vec b2{q("1"), q("1"), q("-2")};
    Polyhedron broken(std::move(a2), std::move(b2));
    Phase1Result r = phase1_global_delta(broken, global_delta_sq(broken.A()), rng);
    REQUIRE_FALSE(r.feasible());
    CHECK(r.infeasible->row == 2);
}
