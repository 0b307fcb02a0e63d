#pragma once

// Randomized space/model generators for the property suites. Everything is
// driven by an evotune::RandomSource so a failing case is reproducible from
// the master seed alone.

#include <string>

#include "evotune/param_space.hpp"
#include "evotune/sim_model.hpp"

namespace testsupport {

// 1..8 genes; a mix of scalar sysctls, triple sysctls (sometimes the
// kernel's ordered tcp_* keys, with monotone bounds), interface attributes,
// and occasional degenerate ranges.
inline evotune::ParameterSpace make_random_space(evotune::RandomSource& rng) {
    using namespace evotune;
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    std::vector<ParameterSpec> specs;
    bool used_ordered_triple = false;
    for (int i = 0; i < n; ++i) {
        ParameterSpec spec;
        const auto shape = rng.uniform_int(0, 9);
        if (shape <= 5) { // scalar sysctl
            spec.mechanism = Mechanism::SysctlWrite;
            spec.key = "net.test.knob" + std::to_string(i);
            std::int64_t lo = rng.uniform_int(-100, 100);
            std::int64_t span = rng.uniform_int(0, 50); // 0 => degenerate
            spec.kind = IntRange{lo, lo + span};
        } else if (shape <= 7) { // triple sysctl
            spec.mechanism = Mechanism::SysctlWrite;
            TripleRange tr;
            if (!used_ordered_triple && rng.uniform_int(0, 1) == 1) {
                used_ordered_triple = true;
                spec.key = "net.ipv4.tcp_rmem"; // sorted-on-sample key
                std::int64_t lo = rng.uniform_int(1, 100);
                std::int64_t mid = lo + rng.uniform_int(0, 100);
                std::int64_t hi = mid + rng.uniform_int(0, 100);
                tr.min = {lo, mid, hi};
                tr.max = {lo + rng.uniform_int(0, 50), mid + rng.uniform_int(50, 100),
                          hi + rng.uniform_int(100, 200)};
            } else {
                spec.key = "net.test.triple" + std::to_string(i);
                for (int k = 0; k < 3; ++k) {
                    std::int64_t lo = rng.uniform_int(0, 100);
                    tr.min[static_cast<std::size_t>(k)] = lo;
                    tr.max[static_cast<std::size_t>(k)] = lo + rng.uniform_int(0, 100);
                }
            }
            spec.kind = tr;
        } else if (shape == 8) { // mtu
            spec.mechanism = Mechanism::InterfaceMtu;
            spec.iface = "eth" + std::to_string(i);
            spec.key = "mtu@" + spec.iface;
            spec.kind = IntRange{1500, 1500 + rng.uniform_int(0, 7500)};
        } else { // txqueuelen
            spec.mechanism = Mechanism::InterfaceTxqueuelen;
            spec.iface = "eth" + std::to_string(i);
            spec.key = "txqueuelen@" + spec.iface;
            spec.kind = IntRange{100, 100 + rng.uniform_int(0, 9900)};
        }
        specs.push_back(std::move(spec));
    }
    return ParameterSpace(std::move(specs));
}

// Deterministic model over the space: every gene gets a curve, some pairs
// interact. Factors stay within [0.8, 1.3] so values remain positive and the
// cap is rarely the binding constraint.
inline evotune::SimModel make_random_model(const evotune::ParameterSpace& space,
                                           evotune::RandomSource& rng) {
    using namespace evotune;
    SimModel m;
    m.name = "property";
    m.base_mbps = static_cast<double>(rng.uniform_int(100, 1000));
    m.cap_mbps = 1.0e6;
    m.noise_stddev_mbps = 0.0;
    for (const auto& spec : space.specs()) {
        const auto kind = rng.uniform_int(0, 2);
        const double lo = 0.8 + 0.01 * static_cast<double>(rng.uniform_int(0, 20));
        const double hi = lo + 0.01 * static_cast<double>(rng.uniform_int(0, 30));
        if (kind == 0) {
            m.curves.emplace_back(spec.key, CurveConstant{});
        } else if (kind == 1) {
            m.curves.emplace_back(spec.key, CurveLinear{lo, hi});
        } else {
            const double center = 0.1 * static_cast<double>(rng.uniform_int(0, 10));
            m.curves.emplace_back(spec.key, CurvePeak{lo, hi, center});
        }
    }
    if (space.size() >= 2 && rng.uniform_int(0, 1) == 1) {
        const auto a = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(space.size()) - 1));
        const auto b = static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(space.size()) - 1));
        if (a != b) {
            m.interactions.push_back(
                SimInteraction{space[a].key, space[b].key,
                               static_cast<double>(rng.uniform_int(-50, 50))});
        }
    }
    return m;
}

} // namespace testsupport
