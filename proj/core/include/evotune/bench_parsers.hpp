#pragma once

#include <string_view>

#include "evotune/errors.hpp"

namespace evotune {

struct LatencyReport {
    double min_ms = 0.0;
    double avg_ms = 0.0;
    double max_ms = 0.0;
};

// All three parsers are total over arbitrary bytes: they return a value or
// throw UnparseableOutputError, never crash. Throughput is always Mbit/s.

// netperf TCP_STREAM-style report: the final line whose fields are all
// numeric carries the throughput (10^6 bits/s) in its last column.
double parse_throughput_netperf(std::string_view output);

// iperf2/iperf3 output: prefers the iperf3 "receiver" summary line, otherwise
// the last line with a bitrate. Units normalized (Gbits/sec -> x1000, etc.).
double parse_throughput_iperf(std::string_view output);

// hping3/ping summary: "round-trip min/avg/max = 1.2/6.8/1005.8 ms".
// A line whose numbers violate min <= avg <= max is rejected.
LatencyReport parse_latency_hping(std::string_view output);

} // namespace evotune
