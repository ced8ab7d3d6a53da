#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "shadow/linalg.hpp"

namespace shadow {

using Rng = std::mt19937_64;

/// Derives an independent per-trial stream from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// A draw from the isotropic density proportional to exp(-||x||) on R^n.
struct ConeSample {
    std::vector<double> x;
    double norm = 0.0;
    std::uint64_t seed = 0;  // provenance: seed of the generating stream
    int attempts = 1;        // rejection attempts (1 when unconditioned)

    int dim() const { return static_cast<int>(x.size()); }
};

/// Radial factorization: direction uniform on the sphere, radius from
/// Gamma(n, 1) as a sum of n unit exponentials. E[||X||] = n. The density's
/// normalizing constant (1 over n! times the unit-ball volume) cancels out
/// of the factorization and is never needed numerically.
ConeSample sample_exponential(int n, Rng& rng, std::uint64_t seed_tag = 0);

/// Rejection sampling of sample_exponential until ||X|| <= bound
/// (default 2n). Expected at most 2 attempts; hard cap 10^6.
ConeSample sample_conditioned(int n, Rng& rng, double bound = -1.0, std::uint64_t seed_tag = 0);

/// Coordinatewise nearest rationals with denominator bound D (>= 2^32);
/// ||rationalized - x|| <= sqrt(n)/D.
Vec rationalize(const ConeSample& sample, const Integer& denominator_bound);
Vec rationalize(const std::vector<double>& x, const Integer& denominator_bound);

// Deterministic low-level transforms (stable across platforms, unlike the
// std::distribution wrappers).
double uniform01(Rng& rng);          // open (0,1)
double exponential1(Rng& rng);       // rate-1 exponential
double standard_normal(Rng& rng);    // Box-Muller, spare discarded

}  // namespace shadow
