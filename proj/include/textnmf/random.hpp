#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace textnmf {

// Samplers built directly on the mt19937_64 bit stream. The standard pins
// the engine's output exactly, so sequences (and everything derived from a
// seed) are reproducible across standard libraries and platforms, which
// std::gamma_distribution and friends do not guarantee.

/// Uniform draw in (0, 1) using 53 random bits; never returns 0.
inline double uniform01(std::mt19937_64& rng) {
    for (;;) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u > 0.0) {
            return u;
        }
    }
}

/// Standard normal draw (Box-Muller, no caching).
inline double normal_sample(std::mt19937_64& rng) {
    const double u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// Gamma draw with shape a > 0 and scale b > 0 (Marsaglia-Tsang, with the
/// usual boost for a < 1).
inline double gamma_sample(std::mt19937_64& rng, double a, double b) {
    if (a < 1.0) {
        const double u = uniform01(rng);
        return gamma_sample(rng, a + 1.0, b) * std::pow(u, 1.0 / a);
    }
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal_sample(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform01(rng);
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return d * v * b;
        }
    }
}

namespace details {

inline std::uint64_t poisson_knuth(std::mt19937_64& rng, double mean) {
    const double limit = std::exp(-mean);
    std::uint64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= uniform01(rng);
    } while (p > limit);
    return k - 1;
}

} // namespace details

/// Poisson draw with arbitrary nonnegative mean. Large means are split into
/// chunks of at most 30 and summed, which is exact by Poisson additivity and
/// keeps the rejection-free Knuth kernel in its numerically safe range.
inline std::uint64_t poisson_sample(std::mt19937_64& rng, double mean) {
    std::uint64_t total = 0;
    while (mean > 30.0) {
        total += details::poisson_knuth(rng, 30.0);
        mean -= 30.0;
    }
    if (mean > 0.0) {
        total += details::poisson_knuth(rng, mean);
    }
    return total;
}

} // namespace textnmf
