#include "shadow/harness.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <map>
#include <thread>

#include "shadow/combinations.hpp"
#include "shadow/optimize.hpp"

namespace shadow {

std::vector<VertexInfo> enumerate_vertices(const Polyhedron& p) {
    const int m = p.m(), n = p.n();
    std::map<std::vector<Rational>, size_t> seen;
    std::vector<VertexInfo> out;

    auto subset = first_combination(n);
    do {
        Mat rows = p.A().select_rows(subset);
        if (sgn(determinant(rows)) == 0) continue;
        Vec bb(n);
        for (int k = 0; k < n; ++k) bb[k] = p.b()[subset[static_cast<size_t>(k)]];
        Vec x = solve_square(rows, bb);
        if (!p.contains(x)) continue;
        std::vector<Rational> key(x.begin(), x.end());
        if (seen.count(key)) continue;
        VertexInfo info;
        info.point = x;
        for (int i = 0; i < m; ++i)
            if (dot(p.row(i), x) == p.b()[i]) info.tight.push_back(i);
        seen.emplace(std::move(key), out.size());
        out.push_back(std::move(info));
    } while (next_combination(subset, m));
    return out;
}

BruteForceResult brute_force_optimize(const Polyhedron& p, const Vec& c) {
    if (auto ray = recession_direction(p)) throw Unbounded("recession direction " + to_string(*ray));
    auto vertices = enumerate_vertices(p);
    if (vertices.empty()) throw NoFeasibleBasis();
    BruteForceResult out;
    bool first = true;
    for (const auto& v : vertices) {
        Rational val = dot(c, v.point);
        if (first || val > out.value) {
            out.value = val;
            out.maximizers.clear();
            out.maximizers.push_back(v.point);
            first = false;
        } else if (val == out.value) {
            out.maximizers.push_back(v.point);
        }
    }
    return out;
}

NormalFan build_normal_fan(const Polyhedron& p) {
    NormalFan fan;
    fan.vertices = enumerate_vertices(p);
    const int n = p.n();
    for (size_t i = 0; i < fan.vertices.size(); ++i) {
        for (size_t j = i + 1; j < fan.vertices.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(fan.vertices[i].tight.begin(), fan.vertices[i].tight.end(),
                                  fan.vertices[j].tight.begin(), fan.vertices[j].tight.end(),
                                  std::back_inserter(common));
            if (common.empty()) continue;
            if (rank(p.A().select_rows(common)) != n - 1) continue;
            FanEdge e;
            e.v1 = static_cast<int>(i);
            e.v2 = static_cast<int>(j);
            e.normal = fan.vertices[i].point - fan.vertices[j].point;
            e.common = common;
            fan.edges.push_back(std::move(e));
        }
    }
    return fan;
}

Rational certified_tau_sq(const Polyhedron& p) {
    auto vertices = enumerate_vertices(p);
    if (vertices.empty()) throw NoFeasibleBasis();
    const int n = p.n();
    std::optional<Rational> worst;
    for (const auto& v : vertices) {
        const auto& tight = v.tight;
        if (static_cast<int>(tight.size()) < n) throw Error("vertex with deficient tight set");
        std::optional<Rational> best;
        auto pick = first_combination(n);
        do {
            std::vector<int> rows;
            for (int k : pick) rows.push_back(tight[static_cast<size_t>(k)]);
            Mat gen = p.A().select_rows(rows);
            if (sgn(determinant(gen)) == 0) continue;
            WidthCertificate cert = width_certificate_of_cone(gen);
            if (!best || cert.tau_sq > *best) best = cert.tau_sq;
        } while (next_combination(pick, static_cast<int>(tight.size())));
        if (!best) throw Error("no independent basis among tight rows");
        if (!worst || *best < *worst) worst = *best;
    }
    return *worst;
}

void CrossingReport::finalize(double bound_value) {
    bound = bound_value;
    const size_t n = counts.size();
    double sum = 0;
    for (int c : counts) sum += c;
    mean = n ? sum / static_cast<double>(n) : 0.0;
    double ss = 0;
    for (int c : counts) ss += (c - mean) * (c - mean);
    double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
    stderr_mean = n ? std::sqrt(var / static_cast<double>(n)) : 0.0;
    pass = mean <= bound + 3 * stderr_mean;
}

std::optional<int> count_fan_crossings(const NormalFan& fan, const Vec& p0, const Vec& p1) {
    int count = 0;
    for (const auto& e : fan.edges) {
        Rational s0 = dot(p0, e.normal);
        Rational s1 = dot(p1, e.normal);
        if (sgn(s0) == 0 || sgn(s1) == 0) return std::nullopt;
        if (sgn(s0) == sgn(s1)) continue;
        Rational t = s0 / (s0 - s1);
        Vec y = p0 + t * (p1 - p0);
        // The hit counts iff the maximizers of <y, .> are exactly the edge's
        // two endpoints (the facet's relative interior).
        Rational best;
        std::vector<int> argmax;
        for (size_t vi = 0; vi < fan.vertices.size(); ++vi) {
            Rational val = dot(y, fan.vertices[vi].point);
            if (argmax.empty() || val > best) {
                best = val;
                argmax.assign(1, static_cast<int>(vi));
            } else if (val == best) {
                argmax.push_back(static_cast<int>(vi));
            }
        }
        if (argmax.size() == 1) continue;
        if (argmax.size() != 2) return std::nullopt;
        int a = argmax[0], b = argmax[1];
        if ((a == e.v1 && b == e.v2) || (a == e.v2 && b == e.v1)) {
            ++count;
        }
        // A two-vertex argmax that is some other edge means the hit lies
        // outside this facet; nothing to count.
    }
    return count;
}

namespace {

struct TrialOutcome {
    int count = 0;
    int retries = 0;
};

// Runs trials concurrently; per-trial rng streams are derived from the
// master seed so aggregation order never affects the result.
template <typename TrialFn>
std::vector<TrialOutcome> run_trials(int trials, TrialFn&& fn) {
    std::vector<TrialOutcome> results(static_cast<size_t>(trials));
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    if (trials < 32) workers = 1;
    std::vector<std::future<void>> futs;
    std::size_t chunk = (static_cast<size_t>(trials) + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min<std::size_t>(lo + chunk, static_cast<size_t>(trials));
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [&, lo, hi]() {
            for (std::size_t t = lo; t < hi; ++t) results[t] = fn(static_cast<int>(t));
        }));
    }
    for (auto& f : futs) f.get();
    return results;
}

constexpr int kTrialRetryCap = 1000;

}  // namespace

CrossingReport crossings_shifted(const NormalFan& fan, const Vec& c, const Vec& d, int trials,
                                 std::uint64_t seed, const Rational& tau_sq) {
    if (trials < 1) throw BadParams("trial count must be >= 1");
    const int n = c.size();
    const Integer D = default_denominator_bound();

    auto outcomes = run_trials(trials, [&](int t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        TrialOutcome out;
        for (int attempt = 0; attempt < kTrialRetryCap; ++attempt) {
            Vec x = rationalize(sample_exponential(n, rng), D);
            auto crossings = count_fan_crossings(fan, c + x, d + x);
            if (crossings) {
                out.count = *crossings;
                return out;
            }
            ++out.retries;
        }
        throw Error("crossing trial exhausted retries");
    });

    CrossingReport report;
    for (const auto& o : outcomes) {
        report.counts.push_back(o.count);
        report.raw_counts.push_back(2 * o.count);  // each facet borders two cones
        report.retries += o.retries;
    }
    double tau = std::sqrt(tau_sq.get_d());
    report.finalize(std::sqrt(norm_sq(d - c).get_d()) / tau);
    return report;
}

CrossingReport crossings_scaled(const NormalFan& fan, const Vec& c, const Rational& alpha,
                                int trials, std::uint64_t seed, const Rational& tau_sq) {
    if (trials < 1) throw BadParams("trial count must be >= 1");
    if (sgn(alpha) <= 0 || alpha >= 1) throw BadParams("alpha must lie in (0,1)");
    const int n = c.size();
    const Integer D = default_denominator_bound();

    auto outcomes = run_trials(trials, [&](int t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        TrialOutcome out;
        for (int attempt = 0; attempt < kTrialRetryCap; ++attempt) {
            Vec x = rationalize(sample_exponential(n, rng), D);
            auto crossings = count_fan_crossings(fan, c + alpha * x, c + x);
            if (crossings) {
                out.count = *crossings;
                return out;
            }
            ++out.retries;
        }
        throw Error("crossing trial exhausted retries");
    });

    CrossingReport report;
    for (const auto& o : outcomes) {
        report.counts.push_back(o.count);
        report.raw_counts.push_back(2 * o.count);
        report.retries += o.retries;
    }
    double tau = std::sqrt(tau_sq.get_d());
    report.finalize(2.0 * n / tau * std::log(1.0 / alpha.get_d()));
    return report;
}

DiameterPathResult diameter_path(const Polyhedron& p, const Basis& v1, const Basis& v2,
                                 const Rational& tau_sq, Rng& rng) {
    const int n = p.n();
    if (!p.basis_feasible(v1) || !p.basis_feasible(v2)) throw InfeasibleBasis();

    DiameterPathResult result;
    double tau = std::sqrt(tau_sq.get_d());
    result.length_bound = 8.0 * n / tau * (1.0 + std::log(1.0 / tau));

    Vec x1 = p.vertex_of(v1), x2 = p.vertex_of(v2);
    if (x1 == x2) {
        result.path = {v1};
        result.vertices = {x1};
        result.endpoint_ok = true;
        return result;
    }

    Vec c1 = width_certificate_of_cone(p.A().select_rows(v1.indices())).center;
    Vec c2 = width_certificate_of_cone(p.A().select_rows(v2.indices())).center;
    if (!normal_cone_membership(p, v1, c1) || !normal_cone_membership(p, v2, c2))
        throw Error("certificate center escaped its normal cone");

    Rational s = Rational(4 * n) / sqrt_lower(norm_sq(c2 - c1));
    Vec sc1 = s * c1, sc2 = s * c2;

    ShadowResult chain;
    for (int attempt = 0;; ++attempt) {
        Vec x = rationalize(sample_conditioned(n, rng, 2.0 * n), default_denominator_bound());
        std::vector<Vec> waypoints{sc1, sc1 + x, sc2 + x, sc2};
        try {
            chain = follow_segment_chain(p, waypoints, v1);
            break;
        } catch (const DegenerateSegment&) {
            if (attempt >= 16) throw RetriesExhausted("diameter path kept hitting degenerate segments");
        }
    }

    result.trace = std::move(chain.trace);
    result.path.push_back(v1);
    result.vertices.push_back(x1);
    for (const auto& rec : result.trace.records) {
        result.path.push_back(rec.basis_after);
        result.vertices.push_back(p.vertex_of(rec.basis_after));
    }
    for (size_t i = 1; i < result.vertices.size(); ++i)
        if (!(result.vertices[i] == result.vertices[i - 1])) ++result.vertex_steps;
    result.endpoint_ok = (result.vertices.back() == x2) && (chain.basis == result.path.back());
    return result;
}

namespace {

Instance make_cube(int n) {
    Mat a(2 * n, n);
    Vec b(2 * n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = 1;
        b[i] = 1;
        a(n + i, i) = -1;
        b[n + i] = 0;
    }
    Instance inst{Polyhedron(std::move(a), std::move(b)), "cube", {}};
    inst.meta["delta_sq"] = to_string(Rational(1));
    inst.meta["tau_sq"] = to_string(Rational(1, n));
    inst.meta["vertex_count"] = std::to_string(1 << n);
    return inst;
}

Instance make_simplex(int n) {
    Mat a(n + 1, n);
    Vec b(n + 1);
    for (int i = 0; i < n; ++i) {
        a(i, i) = -1;
        b[i] = 0;
    }
    for (int j = 0; j < n; ++j) a(n, j) = 1;
    b[n] = 1;
    Instance inst{Polyhedron(std::move(a), std::move(b)), "simplex", {}};
    inst.meta["delta_sq"] = to_string(local_delta_sq(inst.p));
    inst.meta["vertex_count"] = std::to_string(n + 1);
    return inst;
}

Instance make_pyramid() {
    // Square pyramid over [-1,1]^2 with apex (0,0,1); the apex has four
    // tight constraints, so the instance is degenerate.
    Mat a{{Rational(0), Rational(0), Rational(-1)},
          {Rational(1), Rational(0), Rational(1)},
          {Rational(-1), Rational(0), Rational(1)},
          {Rational(0), Rational(1), Rational(1)},
          {Rational(0), Rational(-1), Rational(1)}};
    Vec b{Rational(0), Rational(1), Rational(1), Rational(1), Rational(1)};
    Instance inst{Polyhedron(std::move(a), std::move(b)), "pyramid", {}};
    inst.meta["delta_sq"] = to_string(local_delta_sq(inst.p));
    inst.meta["vertex_count"] = "5";
    return inst;
}

Instance make_tu_interval(int n) {
    std::vector<Vec> rows;
    std::vector<Rational> rhs;
    for (int i = 0; i < n; ++i) {
        Vec lo(n), hi(n);
        lo[i] = -1;
        hi[i] = 1;
        rows.push_back(lo);
        rhs.push_back(Rational(0));
        rows.push_back(hi);
        rhs.push_back(Rational(1));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Vec r(n);
            for (int k = i; k <= j; ++k) r[k] = 1;
            rows.push_back(r);
            rhs.push_back(Rational(j - i + 1) - Rational(1, 2));
        }
    Mat a(static_cast<int>(rows.size()), n);
    Vec b(static_cast<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        a.set_row(static_cast<int>(i), rows[i]);
        b[static_cast<int>(i)] = rhs[i];
    }
    Instance inst{Polyhedron(std::move(a), std::move(b)), "tu-interval", {}};
    SubdetBound sb = delta_from_subdeterminants(inst.p.A());
    inst.meta["subdet_delta_lb"] = to_string(sb.delta_lb);
    inst.meta["subdet_tau_lb"] = to_string(sb.tau_lb);
    return inst;
}

Instance make_random_delta(int n, int m, std::uint64_t seed) {
    if (m < 2 * n) throw BadParams("random-delta needs m >= 2n for the bounding box");
    Rng rng(derive_seed(seed, 0x5eed));
    Mat a(m, n);
    Vec b(m);
    for (int i = 0; i < n; ++i) {
        a(i, i) = 1;
        b[i] = 1;
        a(n + i, i) = -1;
        b[n + i] = 1;
    }
    auto rand_int = [&](int lo, int hi) {
        return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    };
    for (int i = 2 * n; i < m; ++i) {
        bool nonzero = false;
        while (!nonzero) {
            for (int j = 0; j < n; ++j) {
                int e = rand_int(-2, 2);
                a(i, j) = e;
                if (e != 0) nonzero = true;
            }
        }
        Rational rhs(rand_int(2, 6), 2);  // in [1, 3], origin stays interior
        rhs.canonicalize();
        b[i] = rhs;
    }
    Instance inst{Polyhedron(std::move(a), std::move(b)), "random-delta", {}};
    if (n <= 3 && m <= 12) inst.meta["delta_sq"] = to_string(local_delta_sq(inst.p));
    return inst;
}

}  // namespace

Instance generate_instance(const std::string& kind, int n, int m, std::uint64_t seed) {
    if (kind == "cube") {
        if (n < 1) throw BadParams("cube needs n >= 1");
        return make_cube(n);
    }
    if (kind == "simplex") {
        if (n < 1) throw BadParams("simplex needs n >= 1");
        return make_simplex(n);
    }
    if (kind == "pyramid") return make_pyramid();
    if (kind == "tu-interval") {
        if (n < 2) throw BadParams("tu-interval needs n >= 2");
        return make_tu_interval(n);
    }
    if (kind == "random-delta") {
        if (n < 1) throw BadParams("random-delta needs n >= 1");
        return make_random_delta(n, m, seed);
    }
    throw BadParams("unknown instance kind: " + kind);
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw BadParams("trial count must be >= 1");
    if (kind != "diameter" && kind != "crossings-shifted" && kind != "crossings-scaled" &&
        kind != "phase2-stats")
        throw BadParams("unknown experiment kind: " + kind);
    if (kind == "crossings-scaled") {
        if (!alpha || sgn(*alpha) <= 0 || *alpha >= 1)
            throw BadParams("scaled experiment needs alpha in (0,1)");
    }
}

}  // namespace shadow
