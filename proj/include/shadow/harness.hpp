#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shadow/bounding.hpp"
#include "shadow/pivot.hpp"
#include "shadow/sampler.hpp"

namespace shadow {

/// A vertex with every row tight at it (degeneracy-aware: one vertex may
/// carry more than n tight rows).
struct VertexInfo {
    Vec point;
    std::vector<int> tight;
};

/// All vertices by basis enumeration. Desk scale: C(m, n) subsets.
std::vector<VertexInfo> enumerate_vertices(const Polyhedron& p);

struct BruteForceResult {
    std::vector<Vec> maximizers;  // ties reported as a set
    Rational value;
};

/// Exact argmax of <c, x> over the enumerated vertices. Throws Unbounded
/// when the recession cone is nontrivial.
BruteForceResult brute_force_optimize(const Polyhedron& p, const Vec& c);

/// Edges of the polytope graph; each is dual to one facet of the normal
/// fan, whose hyperplane normal is the vertex difference.
struct FanEdge {
    int v1 = 0, v2 = 0;      // indices into vertices
    Vec normal;              // vertex(v1) - vertex(v2)
    std::vector<int> common; // shared tight rows (rank n-1)
};

struct NormalFan {
    std::vector<VertexInfo> vertices;
    std::vector<FanEdge> edges;
};

NormalFan build_normal_fan(const Polyhedron& p);

/// Certified squared width of the fan: per vertex, the best width
/// certificate over independent n-subsets of its tight rows; minimized
/// over vertices.
Rational certified_tau_sq(const Polyhedron& p);

/// Exact crossing count of one segment against the fan facets, each facet
/// counted once via its relative-interior test. nullopt on a measure-zero
/// configuration (endpoint on a hyperplane or hit on a lower-dim face).
std::optional<int> count_fan_crossings(const NormalFan& fan, const Vec& p0, const Vec& p1);

struct CrossingReport {
    std::vector<int> counts;      // per-trial crossings, each facet once
    std::vector<int> raw_counts;  // per-cone boundary incidences (2x)
    double mean = 0.0;
    double stderr_mean = 0.0;
    double bound = 0.0;
    int retries = 0;  // re-sampled measure-zero trials
    bool pass = false;

    void finalize(double bound_value);
};

/// Monte-Carlo facet crossings of [c + X, d + X], X unconditioned.
CrossingReport crossings_shifted(const NormalFan& fan, const Vec& c, const Vec& d, int trials,
                                 std::uint64_t seed, const Rational& tau_sq);

/// Monte-Carlo facet crossings of [c + alpha X, c + X].
CrossingReport crossings_scaled(const NormalFan& fan, const Vec& c, const Rational& alpha,
                                int trials, std::uint64_t seed, const Rational& tau_sq);

struct DiameterPathResult {
    std::vector<Basis> path;   // visited bases, start first
    std::vector<Vec> vertices; // vertex per path entry
    PivotTrace trace;
    int vertex_steps = 0;      // edges walked in the 1-skeleton
    bool endpoint_ok = false;
    double length_bound = 0.0; // 8n/tau (1 + ln(1/tau))
};

/// Random three-segment path between two vertex bases through deep-cone
/// objectives; retries on degenerate segments.
DiameterPathResult diameter_path(const Polyhedron& p, const Basis& v1, const Basis& v2,
                                 const Rational& tau_sq, Rng& rng);

struct Instance {
    Polyhedron p;
    std::string kind;
    std::map<std::string, std::string> meta;  // rationals serialized as "p/q"
};

/// Built-in instance families with known ground truth recorded in meta.
/// Kinds: cube, simplex, pyramid, tu-interval, random-delta.
Instance generate_instance(const std::string& kind, int n, int m, std::uint64_t seed);

struct ExperimentConfig {
    std::string instance_path;
    std::string kind;  // diameter | crossings-shifted | crossings-scaled | phase2-stats
    int trials = 1;
    std::uint64_t seed = 0;
    std::optional<Rational> tau_sq;
    std::optional<Rational> alpha;
    std::optional<Vec> c, d;
    std::optional<Basis> v1, v2;
    std::optional<Rational> delta_sq;

    void validate() const;
};

}  // namespace shadow
