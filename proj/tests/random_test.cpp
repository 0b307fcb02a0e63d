#include <doctest.h>

#include <cmath>

#include "evotune/random.hpp"

using evotune::RandomSource;

TEST_CASE("same seed, same stream") {
    RandomSource a(123), b(123);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
}

TEST_CASE("uniform_int stays inclusive of both bounds and covers them") {
    RandomSource rng(7);
    bool saw_lo = false, saw_hi = false;
    for (int i = 0; i < 2000; ++i) {
        auto v = rng.uniform_int(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
        saw_lo |= (v == -3);
        saw_hi |= (v == 3);
    }
    CHECK(saw_lo);
    CHECK(saw_hi);
}

TEST_CASE("uniform_int handles extreme and degenerate spans") {
    RandomSource rng(7);
    CHECK(rng.uniform_int(5, 5) == 5);
    CHECK(rng.uniform_int(-9, -9) == -9);
    for (int i = 0; i < 100; ++i) {
        auto v = rng.uniform_int(INT64_MIN, INT64_MAX);
        (void)v; // full span: any value is in range by definition
    }
    for (int i = 0; i < 100; ++i) {
        auto v = rng.uniform_int(INT64_MAX - 1, INT64_MAX);
        CHECK(v >= INT64_MAX - 1);
    }
}

TEST_CASE("degenerate ranges consume no draws") {
    RandomSource a(42), b(42);
    (void)a.uniform_int(7, 7);
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform01 is in [0,1) and roughly centered") {
    RandomSource rng(11);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double v = rng.uniform01();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        sum += v;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("gaussian has the requested spread and zero draws when disabled") {
    RandomSource rng(13);
    double sum = 0.0, sumsq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double v = rng.gaussian(10.0);
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / n;
    double stddev = std::sqrt(sumsq / n - mean * mean);
    CHECK(std::abs(mean) < 0.3); // standard error is ~0.07 at this sample size
    CHECK(stddev == doctest::Approx(10.0).epsilon(0.05));

    RandomSource a(42), b(42);
    CHECK(a.gaussian(0.0) == 0.0);
    CHECK(a.gaussian(-1.0) == 0.0);
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("uniform_int over a power-of-two-minus-1 span has no bias at the ends") {
    // Bitmask rejection should hit every value of a [0,7] span about equally.
    RandomSource rng(3);
    int counts[8] = {0};
    const int n = 80000;
    for (int i = 0; i < n; ++i) {
        ++counts[rng.uniform_int(0, 7)];
    }
    for (int c : counts) {
        CHECK(c > n / 8 - n / 80);
        CHECK(c < n / 8 + n / 80);
    }
}
