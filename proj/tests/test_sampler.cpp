#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "shadow/errors.hpp"
#include "shadow/sampler.hpp"

using namespace shadow;

TEST_CASE("radial law: mean norm is n") {
    const int trials = 100000;
    for (int n : {1, 2, 5, 10}) {
        Rng rng(derive_seed(12345, static_cast<std::uint64_t>(n)));
        double sum = 0;
        for (int t = 0; t < trials; ++t) sum += sample_exponential(n, rng).norm;
        double mean = sum / trials;
        double tol = 4.0 * std::sqrt(static_cast<double>(n)) / std::sqrt(static_cast<double>(trials));
        CHECK(std::abs(mean - n) <= tol);
    }
}

TEST_CASE("spherical symmetry: componentwise mean and covariance") {
    const int trials = 100000;
    const int n = 3;
    Rng rng(derive_seed(777, 3));
    std::vector<double> mean(n, 0.0);
    std::vector<double> cov(static_cast<size_t>(n) * n, 0.0);
    for (int t = 0; t < trials; ++t) {
        ConeSample s = sample_exponential(n, rng);
        for (int i = 0; i < n; ++i) {
            mean[static_cast<size_t>(i)] += s.x[static_cast<size_t>(i)];
            for (int j = 0; j < n; ++j)
                cov[static_cast<size_t>(i) * n + j] += s.x[static_cast<size_t>(i)] * s.x[static_cast<size_t>(j)];
        }
    }
    double mean_tol = 4.0 * std::sqrt(n * (n + 1.0)) / std::sqrt(static_cast<double>(trials));
    double offdiag_tol = 4.0 * std::sqrt((n + 1.0) * (n + 3.0)) / std::sqrt(static_cast<double>(trials));
    for (int i = 0; i < n; ++i) {
        CHECK(std::abs(mean[static_cast<size_t>(i)] / trials) <= mean_tol);
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CHECK(std::abs(cov[static_cast<size_t>(i) * n + j] / trials) <= offdiag_tol);
        }
    }
}

TEST_CASE("conditioned sampler respects the bound and the Markov rate") {
    for (int n : {2, 5, 10}) {
        Rng rng(derive_seed(99, static_cast<std::uint64_t>(n)));
        const int trials = 20000;
        long total_attempts = 0;
        for (int t = 0; t < trials; ++t) {
            ConeSample s = sample_conditioned(n, rng);
            CHECK(s.norm <= 2.0 * n);
            total_attempts += s.attempts;
        }
        double acceptance = static_cast<double>(trials) / static_cast<double>(total_attempts);
        CHECK(acceptance >= 0.5);
    }
}

TEST_CASE("acceptance rate matches the incomplete gamma oracle for n=3") {
    // Pr[Gamma(3) <= 6] by Simpson quadrature of x^2 e^-x / 2 over [0, 6].
    auto density = [](double x) { return x * x * std::exp(-x) / 2.0; };
    const int steps = 2000;
    double h = 6.0 / steps, integral = 0;
    for (int i = 0; i < steps; ++i) {
        double a = i * h, b = a + h;
        integral += (b - a) / 6.0 * (density(a) + 4.0 * density((a + b) / 2.0) + density(b));
    }
    Rng rng(derive_seed(4242, 3));
    const int trials = 100000;
    long total_attempts = 0;
    for (int t = 0; t < trials; ++t) total_attempts += sample_conditioned(3, rng).attempts;
    double acceptance = static_cast<double>(trials) / static_cast<double>(total_attempts);
    CHECK(std::abs(acceptance - integral) < 0.01);
}

TEST_CASE("determinism: identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int t = 0; t < 100; ++t) {
        ConeSample sa = sample_exponential(4, a);
        ConeSample sb = sample_exponential(4, b);
        CHECK(sa.x == sb.x);
    }
}

TEST_CASE("regression: pinned sample for seed 42, n = 2") {
    Rng rng(42);
    ConeSample s = sample_exponential(2, rng);
    // golden values recorded from the first verified run
    CHECK(s.x[0] == doctest::Approx(-1.719308790317).epsilon(1e-9));
    CHECK(s.x[1] == doctest::Approx(1.767063788228).epsilon(1e-9));
}

TEST_CASE("rationalize") {
    Integer d32 = Integer(1) << 32;
    ConeSample s;
    s.x = {0.5, 0.25};
    s.norm = std::sqrt(0.3125);
    Vec v = rationalize(s, d32);
    CHECK(v[0] == Rational(1, 2));
    CHECK(v[1] == Rational(1, 4));

    ConeSample zero;
    zero.x = {0.0, 0.0, 0.0};
    Vec z = rationalize(zero, default_denominator_bound());
    CHECK(z.is_zero());

    // ||rationalized - original||^2 <= n / D^2
    Rng rng(7);
    for (int t = 0; t < 50; ++t) {
        ConeSample smp = sample_exponential(3, rng);
        Vec r = rationalize(smp, default_denominator_bound());
        Rational err = 0;
        for (int i = 0; i < 3; ++i) {
            Rational diff = r[i] - Rational(smp.x[static_cast<size_t>(i)]);
            err += diff * diff;
        }
        Rational budget = Rational(3) / Rational(default_denominator_bound() * default_denominator_bound());
        CHECK(err <= budget);
    }
    CHECK_THROWS_AS(rationalize(s, Integer(100)), BadParams);
}
