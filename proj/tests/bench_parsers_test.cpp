#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "evotune/bench_parsers.hpp"
#include "evotune/random.hpp"

using namespace evotune;

namespace {

std::string golden(const std::string& name) {
    std::string path = std::string(EVOTUNE_GOLDEN_DIR) + "/" + name;
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("netperf golden outputs parse to their recorded Mbit/s") {
    CHECK(parse_throughput_netperf(golden("netperf_normal.txt")) == doctest::Approx(941.23));
    CHECK(parse_throughput_netperf(golden("netperf_zero.txt")) == doctest::Approx(0.0));
    CHECK(parse_throughput_netperf(golden("netperf_jumbo.txt")) == doctest::Approx(9413.47));
}

TEST_CASE("netperf rejects outputs with no result line") {
    CHECK_THROWS_AS(parse_throughput_netperf(golden("netperf_garbage.txt")),
                    UnparseableOutputError);
    CHECK_THROWS_AS(parse_throughput_netperf(""), UnparseableOutputError);
    CHECK_THROWS_AS(parse_throughput_netperf("Recv Send Send\nbytes bytes bytes\n"),
                    UnparseableOutputError);
}

TEST_CASE("the one-line contract: last all-numeric line, last column") {
    CHECK(parse_throughput_netperf(" 87380  16384  16384    10.02     941.23\n") ==
          doctest::Approx(941.23));
    // Two result lines (e.g. repeated tests): the later one wins.
    CHECK(parse_throughput_netperf(" 87380  16384  16384    10.02     941.23\n"
                                   " 87380  16384  16384    10.01     822.50\n") ==
          doctest::Approx(822.50));
    // 3-token numeric lines are not result lines.
    CHECK_THROWS_AS(parse_throughput_netperf("1 2 3\n"), UnparseableOutputError);
}

TEST_CASE("iperf golden outputs") {
    CHECK(parse_throughput_iperf(golden("iperf3_receiver.txt")) == doctest::Approx(938.0));
    CHECK(parse_throughput_iperf(golden("iperf_gbit.txt")) == doctest::Approx(9360.0));
    CHECK(parse_throughput_iperf(golden("iperf2_summary.txt")) == doctest::Approx(941.0));
    CHECK_THROWS_AS(parse_throughput_iperf(golden("iperf_garbage.txt")), UnparseableOutputError);
}

TEST_CASE("iperf unit conversions normalize to Mbit/s") {
    CHECK(parse_throughput_iperf("[ 5] 0.0-1.0 sec 1 MBytes 9.41 Gbits/sec\n") ==
          doctest::Approx(9410.0));
    CHECK(parse_throughput_iperf("[ 5] 0.0-1.0 sec 1 MBytes 941 Mbits/sec\n") ==
          doctest::Approx(941.0));
    CHECK(parse_throughput_iperf("[ 5] 0.0-1.0 sec 1 KBytes 56.0 Kbits/sec\n") ==
          doctest::Approx(0.056));
    CHECK(parse_throughput_iperf("[ 5] 0.0-1.0 sec 12 Bytes 96.0 bits/sec\n") ==
          doctest::Approx(96.0e-6));
}

TEST_CASE("hping golden outputs parse to the recorded triples") {
    LatencyReport fast = parse_latency_hping(golden("hping_fast.txt"));
    CHECK(fast.min_ms == doctest::Approx(1.2));
    CHECK(fast.avg_ms == doctest::Approx(6.8));
    CHECK(fast.max_ms == doctest::Approx(1005.8));

    LatencyReport dflt = parse_latency_hping(golden("hping_default.txt"));
    CHECK(dflt.min_ms == doctest::Approx(1.3));
    CHECK(dflt.avg_ms == doctest::Approx(7.0));
    CHECK(dflt.max_ms == doctest::Approx(1006.1));

    CHECK_THROWS_AS(parse_latency_hping(golden("hping_garbage.txt")), UnparseableOutputError);
}

TEST_CASE("hping summary lines parse standalone") {
    LatencyReport r = parse_latency_hping("round-trip min/avg/max = 1.2/6.8/1005.8 ms\n");
    CHECK(r.min_ms == doctest::Approx(1.2));
    CHECK(r.avg_ms == doctest::Approx(6.8));
    CHECK(r.max_ms == doctest::Approx(1005.8));
}

TEST_CASE("hping ordering and number-shape guards") {
    // avg below min: physically impossible, reject.
    CHECK_THROWS_AS(parse_latency_hping("round-trip min/avg/max = 6.8/1.2/1005.8 ms\n"),
                    UnparseableOutputError);
    // "1..2" slips through the regex char class; from_chars catches it.
    CHECK_THROWS_AS(parse_latency_hping("round-trip min/avg/max = 1..2/6.8/1005.8 ms\n"),
                    UnparseableOutputError);
    CHECK_THROWS_AS(parse_latency_hping(""), UnparseableOutputError);
}

TEST_CASE("fuzzed bytes never crash any parser") {
    RandomSource rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::string bytes;
        const auto len = static_cast<std::size_t>(rng.uniform_int(0, 300));
        bytes.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            // Mix of arbitrary bytes and structure-ish characters so number
            // and slash paths get exercised, not just early rejects.
            switch (rng.uniform_int(0, 3)) {
                case 0:
                    bytes.push_back(static_cast<char>(rng.uniform_int(0, 255)));
                    break;
                case 1:
                    bytes.push_back(static_cast<char>('0' + rng.uniform_int(0, 9)));
                    break;
                case 2:
                    bytes.push_back(" \t\n./-"[rng.uniform_int(0, 5)]);
                    break;
                default:
                    bytes.push_back(
                        "round-trip min/avg/max = Gbits/sec receiver"[rng.uniform_int(0, 42)]);
                    break;
            }
        }
        try {
            (void)parse_throughput_netperf(bytes);
        } catch (const UnparseableOutputError&) {
        }
        try {
            (void)parse_throughput_iperf(bytes);
        } catch (const UnparseableOutputError&) {
        }
        try {
            (void)parse_latency_hping(bytes);
        } catch (const UnparseableOutputError&) {
        }
    }
    CHECK(true); // reaching here without a crash or foreign exception is the pass
}
