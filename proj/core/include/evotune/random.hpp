#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace evotune {

// Deterministic random source. All randomness in the library flows through
// this class instead of <random> distributions: the standard pins mt19937_64's
// output exactly, but libstdc++ and libc++ disagree on distribution algorithms,
// and run reports have to be reproducible byte for byte from a seed alone.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform over [lo, hi], both ends inclusive. Bitmask rejection: exact
    // distribution, no modulo bias. A degenerate range consumes no draw.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo);
        if (span == 0) {
            return lo;
        }
        std::uint64_t mask = span;
        mask |= mask >> 1;
        mask |= mask >> 2;
        mask |= mask >> 4;
        mask |= mask >> 8;
        mask |= mask >> 16;
        mask |= mask >> 32;
        for (;;) {
            const std::uint64_t v = next_u64() & mask;
            if (v <= span) {
                return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) + v);
            }
        }
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Gaussian with mean 0 via Box-Muller. Consumes exactly two draws per call;
    // a non-positive stddev consumes none and returns 0.
    double gaussian(double stddev) {
        if (stddev <= 0.0) {
            return 0.0;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log1p(-u1)); // log(1-u1), never log(0)
        return stddev * r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

} // namespace evotune
