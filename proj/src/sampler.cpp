#include "shadow/sampler.hpp"

#include <cmath>

#include "shadow/errors.hpp"

namespace shadow {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    // splitmix64 over master + index golden-ratio steps
    std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(Rng& rng) {
    // 53 random bits, shifted into the open interval
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double exponential1(Rng& rng) { return -std::log(uniform01(rng)); }

double standard_normal(Rng& rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

ConeSample sample_exponential(int n, Rng& rng, std::uint64_t seed_tag) {
    if (n < 1) throw BadParams("dimension must be >= 1");
    std::vector<double> dir(static_cast<size_t>(n));
    double len = 0.0;
    do {
        len = 0.0;
        for (auto& d : dir) {
            d = standard_normal(rng);
            len += d * d;
        }
        len = std::sqrt(len);
    } while (len < 1e-30);

    double radius = 0.0;
    for (int i = 0; i < n; ++i) radius += exponential1(rng);

    ConeSample s;
    s.x.resize(static_cast<size_t>(n));
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        s.x[static_cast<size_t>(i)] = radius * dir[static_cast<size_t>(i)] / len;
        norm2 += s.x[static_cast<size_t>(i)] * s.x[static_cast<size_t>(i)];
    }
    s.norm = std::sqrt(norm2);
    s.seed = seed_tag;
    s.attempts = 1;
    return s;
}

ConeSample sample_conditioned(int n, Rng& rng, double bound, std::uint64_t seed_tag) {
    if (bound < 0) bound = 2.0 * n;
    constexpr int kMaxAttempts = 1000000;
    for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
        ConeSample s = sample_exponential(n, rng, seed_tag);
        if (s.norm <= bound) {
            s.attempts = attempt;
            return s;
        }
    }
    throw Error("conditioned sampler exceeded attempt cap; bound " + std::to_string(bound));
}

Vec rationalize(const std::vector<double>& x, const Integer& D) {
    if (D < (Integer(1) << 32)) throw BadParams("denominator bound must be >= 2^32");
    Vec out(static_cast<int>(x.size()));
    for (size_t i = 0; i < x.size(); ++i) out[static_cast<int>(i)] = rationalize_double(x[i], D);
    return out;
}

Vec rationalize(const ConeSample& sample, const Integer& D) { return rationalize(sample.x, D); }

}  // namespace shadow
