#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "shadow/harness.hpp"
#include "shadow/instance_io.hpp"

using namespace shadow;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Polyhedron unit_square() {
    Mat a{{q("1"), q("0")}, {q("0"), q("1")}, {q("-1"), q("0")}, {q("0"), q("-1")}};
    Vec b{q("1"), q("1"), q("0"), q("0")};
    return Polyhedron(std::move(a), std::move(b));
}

// Parameterized-sweep oracle: sort the hyperplane hit parameters along the
// segment and count changes of the optimal vertex between intervals.
// Independent of the per-facet relative-interior test used by the harness.
int sweep_oracle(const NormalFan& fan, const Vec& p0, const Vec& p1) {
    std::set<Rational> ts;
    for (const auto& e : fan.edges) {
        Rational s0 = dot(p0, e.normal), s1 = dot(p1, e.normal);
        REQUIRE(sgn(s0) != 0);
        REQUIRE(sgn(s1) != 0);
        if (sgn(s0) == sgn(s1)) continue;
        ts.insert(s0 / (s0 - s1));
    }
    std::vector<Rational> cuts(ts.begin(), ts.end());
    std::vector<Rational> mids;
    Rational prev = 0;
    for (const auto& t : cuts) {
        mids.push_back((prev + t) / 2);
        prev = t;
    }
    mids.push_back((prev + 1) / 2);

    int changes = 0;
    int prev_best = -1;
    for (const auto& m : mids) {
        Vec y = (1 - m) * p0 + m * p1;
        int best = -1;
        Rational best_val;
        bool tie = false;
        for (size_t vi = 0; vi < fan.vertices.size(); ++vi) {
            Rational val = dot(y, fan.vertices[vi].point);
            if (best < 0 || val > best_val) {
                best = static_cast<int>(vi);
                best_val = val;
                tie = false;
            } else if (val == best_val) {
                tie = true;
            }
        }
        REQUIRE_FALSE(tie);  // clean trials stay strictly inside cones
        if (prev_best >= 0 && best != prev_best) ++changes;
        prev_best = best;
    }
    return changes;
}

}  // namespace

TEST_CASE("vertex enumeration") {
    SUBCASE("unit square has 4 vertices") {
        auto vs = enumerate_vertices(unit_square());
        CHECK(vs.size() == 4);
        for (const auto& v : vs) CHECK(v.tight.size() == 2);
    }
    SUBCASE("pyramid has 5 vertices and a degenerate apex") {
        Instance pyr = generate_instance("pyramid", 3, 0, 0);
        auto vs = enumerate_vertices(pyr.p);
        CHECK(vs.size() == 5);
        int degenerate = 0;
        for (const auto& v : vs)
            if (v.tight.size() == 4) {
                ++degenerate;
                CHECK(v.point == Vec{q("0"), q("0"), q("1")});
            }
        CHECK(degenerate == 1);
    }
    SUBCASE("infeasible instance yields an empty list") {
        Mat a{{q("1"), q("0")}, {q("-1"), q("0")}, {q("0"), q("1")}};
        Vec b{q("-1"), q("-1"), q("0")};
        CHECK(enumerate_vertices(Polyhedron(std::move(a), std::move(b))).empty());
    }
}

TEST_CASE("brute force optimization") {
    Polyhedron sq = unit_square();
    SUBCASE("unique maximizer") {
        BruteForceResult r = brute_force_optimize(sq, Vec{q("1"), q("1")});
        CHECK(r.value == 2);
        REQUIRE(r.maximizers.size() == 1);
        CHECK(r.maximizers[0] == Vec{q("1"), q("1")});
    }
    SUBCASE("degenerate objective reports the tie set") {
        BruteForceResult r = brute_force_optimize(sq, Vec{q("1"), q("0")});
        CHECK(r.value == 1);
        CHECK(r.maximizers.size() == 2);
    }
    SUBCASE("pyramid apex") {
        Instance pyr = generate_instance("pyramid", 3, 0, 0);
        BruteForceResult r = brute_force_optimize(pyr.p, Vec{q("0"), q("0"), q("1")});
        REQUIRE(r.maximizers.size() == 1);
        CHECK(r.maximizers[0] == Vec{q("0"), q("0"), q("1")});
    }
    SUBCASE("unbounded rejected") {
        Mat a{{q("-1"), q("0")}, {q("0"), q("-1")}};
        Vec b{q("0"), q("0")};
        CHECK_THROWS_AS(brute_force_optimize(Polyhedron(std::move(a), std::move(b)),
                                             Vec{q("1"), q("1")}),
                        Unbounded);
    }
}

TEST_CASE("normal fan structure") {
    NormalFan sq_fan = build_normal_fan(unit_square());
    CHECK(sq_fan.vertices.size() == 4);
    CHECK(sq_fan.edges.size() == 4);
    Instance cube = generate_instance("cube", 3, 0, 0);
    NormalFan cube_fan = build_normal_fan(cube.p);
    CHECK(cube_fan.vertices.size() == 8);
    CHECK(cube_fan.edges.size() == 12);
}

TEST_CASE("certified tau") {
    CHECK(certified_tau_sq(unit_square()) == Rational(1, 2));
    Instance cube = generate_instance("cube", 3, 0, 0);
    CHECK(certified_tau_sq(cube.p) == Rational(1, 3));
    // degenerate instance still certifies
    Instance pyr = generate_instance("pyramid", 3, 0, 0);
    CHECK(sgn(certified_tau_sq(pyr.p)) > 0);
}

TEST_CASE("crossings agree with the sweep oracle") {
    const Integer D = default_denominator_bound();
    SUBCASE("square, shifted segments") {
        NormalFan fan = build_normal_fan(unit_square());
        Vec c{q("1"), q("1/3")}, d{q("0"), q("1/3")};
        int nonzero_trials = 0;
        for (std::uint64_t t = 0; t < 200; ++t) {
            Rng rng(derive_seed(31415, t));
            Vec x = rationalize(sample_exponential(2, rng), D);
            auto primary = count_fan_crossings(fan, c + x, d + x);
            if (!primary) continue;  // measure-zero draw, skipped like the harness
            int oracle = sweep_oracle(fan, c + x, d + x);
            CHECK(*primary == oracle);
            if (oracle > 0) ++nonzero_trials;
        }
        CHECK(nonzero_trials > 10);  // the comparison genuinely sees crossings
    }
    SUBCASE("cube, scaled segments") {
        Instance cube = generate_instance("cube", 3, 0, 0);
        NormalFan fan = build_normal_fan(cube.p);
        Vec c{q("1"), q("1/3"), q("1/9")};
        Rational alpha(1, 3);
        for (std::uint64_t t = 0; t < 100; ++t) {
            Rng rng(derive_seed(27182, t));
            Vec x = rationalize(sample_exponential(3, rng), D);
            auto primary = count_fan_crossings(fan, c + alpha * x, c + x);
            if (!primary) continue;
            CHECK(*primary == sweep_oracle(fan, c + alpha * x, c + x));
        }
    }
}

TEST_CASE("crossing reports") {
    NormalFan fan = build_normal_fan(unit_square());
    SUBCASE("c == d gives all-zero counts") {
        Vec c{q("1"), q("1/3")};
        CrossingReport rep = crossings_shifted(fan, c, c, 50, 42, Rational(1, 2));
        for (int cnt : rep.counts) CHECK(cnt == 0);
        CHECK(rep.mean == 0.0);
        CHECK(rep.pass);
    }
    SUBCASE("shifted bound on the square") {
        Vec c{q("1"), q("1/3")}, d{q("0"), q("1/3")};
        CrossingReport rep = crossings_shifted(fan, c, d, 400, 7, Rational(1, 2));
        CHECK(rep.bound == doctest::Approx(std::sqrt(2.0)));
        CHECK(rep.pass);
        CHECK(rep.raw_counts[0] == 2 * rep.counts[0]);
    }
    SUBCASE("scaled: alpha near 1 gives near-zero counts") {
        Vec c{q("1"), q("1/3")};
        CrossingReport rep = crossings_scaled(fan, c, q("99/100"), 200, 11, Rational(1, 2));
        CHECK(rep.mean <= 0.2);
        CHECK(rep.pass);
    }
    SUBCASE("scaled from the origin never crosses") {
        Vec c{q("0"), q("0")};
        CrossingReport rep = crossings_scaled(fan, c, q("1/2"), 100, 13, Rational(1, 2));
        CHECK(rep.mean == 0.0);
        CHECK(rep.pass);
    }
    SUBCASE("reports are reproducible bit for bit") {
        Vec c{q("1"), q("1/3")}, d{q("0"), q("1/3")};
        CrossingReport a = crossings_shifted(fan, c, d, 100, 99, Rational(1, 2));
        CrossingReport b = crossings_shifted(fan, c, d, 100, 99, Rational(1, 2));
        CHECK(a.counts == b.counts);
        CHECK(a.retries == b.retries);
    }
    SUBCASE("alpha outside (0,1) rejected") {
        Vec c{q("1"), q("0")};
        CHECK_THROWS_AS(crossings_scaled(fan, c, q("1"), 10, 0, Rational(1, 2)), BadParams);
        CHECK_THROWS_AS(crossings_scaled(fan, c, q("0"), 10, 0, Rational(1, 2)), BadParams);
    }
}

TEST_CASE("diameter paths") {
    SUBCASE("identical endpoints: length zero") {
        Polyhedron sq = unit_square();
        Rng rng(1);
        DiameterPathResult r = diameter_path(sq, Basis({0, 1}), Basis({0, 1}), Rational(1, 2), rng);
        CHECK(r.vertex_steps == 0);
        CHECK(r.endpoint_ok);
    }
    SUBCASE("square antipodal: valid adjacent steps") {
        Polyhedron sq = unit_square();
        NormalFan fan = build_normal_fan(sq);
        Rng rng(5);
        DiameterPathResult r = diameter_path(sq, Basis({0, 1}), Basis({2, 3}), Rational(1, 2), rng);
        CHECK(r.endpoint_ok);
        CHECK(r.vertices.front() == Vec{q("1"), q("1")});
        CHECK(r.vertices.back() == Vec{q("0"), q("0")});
        // consecutive path bases share n-1 rows; distinct consecutive
        // vertices must be polytope-adjacent per the fan's edge oracle
        for (size_t i = 1; i < r.path.size(); ++i) {
            std::vector<int> common;
            std::set_intersection(r.path[i - 1].indices().begin(), r.path[i - 1].indices().end(),
                                  r.path[i].indices().begin(), r.path[i].indices().end(),
                                  std::back_inserter(common));
            CHECK(static_cast<int>(common.size()) == sq.n() - 1);
            if (r.vertices[i] == r.vertices[i - 1]) continue;
            bool adjacent = false;
            for (const auto& e : fan.edges) {
                const Vec& u = fan.vertices[static_cast<size_t>(e.v1)].point;
                const Vec& v = fan.vertices[static_cast<size_t>(e.v2)].point;
                if ((u == r.vertices[i - 1] && v == r.vertices[i]) ||
                    (v == r.vertices[i - 1] && u == r.vertices[i]))
                    adjacent = true;
            }
            CHECK(adjacent);
        }
    }
    SUBCASE("cube antipodal over several seeds") {
        Instance cube = generate_instance("cube", 3, 0, 0);
        double total = 0;
        const int seeds = 20;
        double bound = 0;
        for (int s = 0; s < seeds; ++s) {
            Rng rng(derive_seed(2718, static_cast<std::uint64_t>(s)));
            DiameterPathResult r =
                diameter_path(cube.p, Basis({0, 1, 2}), Basis({3, 4, 5}), Rational(1, 3), rng);
            CHECK(r.endpoint_ok);
            total += r.vertex_steps;
            bound = r.length_bound;
        }
        CHECK(total / seeds <= bound);
    }
}

TEST_CASE("instance generators") {
    SUBCASE("cube") {
        Instance c = generate_instance("cube", 3, 0, 0);
        CHECK(c.p.m() == 6);
        CHECK(enumerate_vertices(c.p).size() == 8);
        CHECK(c.meta.at("delta_sq") == "1");
        CHECK(local_delta_sq(c.p) == 1);
    }
    SUBCASE("simplex delta matches enumeration") {
        Instance s = generate_instance("simplex", 2, 0, 0);
        CHECK(parse_rational(s.meta.at("delta_sq")) == Rational(1, 2));
    }
    SUBCASE("tu-interval subdeterminant bound") {
        Instance t = generate_instance("tu-interval", 4, 0, 0);
        CHECK(parse_rational(t.meta.at("subdet_delta_lb")) == Rational(1, 4));
        SubdetBound sb = delta_from_subdeterminants(t.p.A());
        CHECK(sb.delta1 == 1);
        CHECK(sb.delta_nm1 == 1);
    }
    SUBCASE("random-delta is bounded, feasible, deterministic") {
        Instance a = generate_instance("random-delta", 3, 9, 123);
        Instance b = generate_instance("random-delta", 3, 9, 123);
        CHECK(a.p.A() == b.p.A());
        CHECK(is_bounded_polyhedron(a.p));
        CHECK(a.p.contains(Vec{q("0"), q("0"), q("0")}));
    }
    SUBCASE("unknown kind") {
        CHECK_THROWS_AS(generate_instance("moebius", 2, 0, 0), BadParams);
    }
}

TEST_CASE("instance json round trip") {
    Instance inst = generate_instance("random-delta", 2, 6, 9);
    std::string text = instance_to_json(inst);
    Instance back = instance_from_json(text);
    CHECK(back.p.A() == inst.p.A());
    CHECK(back.p.b() == inst.p.b());
    CHECK(back.kind == inst.kind);
    CHECK(back.meta == inst.meta);
}

TEST_CASE("malformed instance files are rejected") {
    CHECK_THROWS_AS(instance_from_json("{\"A\": [[\"1\",\"0\"]]}"), BadParams);  // missing b
    CHECK_THROWS_AS(instance_from_json("{\"A\": [[\"1\",\"0\"],[\"0\"]], \"b\": [\"1\",\"1\"]}"),
                    BadParams);  // ragged rows
    CHECK_THROWS_AS(instance_from_json("{\"A\": [[\"1\",\"0\"]], \"b\": [\"1\",\"2\"]}"),
                    BadParams);  // b length mismatch
    CHECK_THROWS_AS(instance_from_json("{\"A\": [[\"x\",\"0\"],[\"0\",\"1\"]], \"b\": [\"1\",\"1\"]}"),
                    BadParams);  // bad rational
    // rank-deficient matrix fails the pointedness invariant
    CHECK_THROWS_AS(instance_from_json("{\"A\": [[\"1\",\"1\"],[\"2\",\"2\"]], \"b\": [\"1\",\"1\"]}"),
                    NotPointed);
}

TEST_CASE("vector and basis literals") {
    Vec v = parse_vector("1,-2/3,0");
    CHECK(v == Vec{Rational(1), Rational(-2, 3), Rational(0)});
    Basis b = parse_basis("4,0,2");
    CHECK(b.indices() == std::vector<int>{0, 2, 4});
    CHECK_THROWS_AS(parse_vector(""), BadParams);
    CHECK_THROWS_AS(parse_basis("1,1"), BadParams);  // duplicates
}

TEST_CASE("experiment config validation") {
    ExperimentConfig cfg;
    cfg.kind = "crossings-scaled";
    cfg.trials = 10;
    cfg.alpha = Rational(1, 2);
    cfg.validate();
    cfg.alpha = Rational(2);
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    cfg.kind = "nope";
    CHECK_THROWS_AS(cfg.validate(), BadParams);
    cfg.kind = "diameter";
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), BadParams);
}
