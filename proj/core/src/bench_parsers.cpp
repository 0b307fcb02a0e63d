#include "evotune/bench_parsers.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace evotune {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && first != last && std::isfinite(out);
}

std::string snippet(std::string_view output) {
    std::string s(output.substr(0, 80));
    for (char& c : s) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return s;
}

} // namespace

double parse_throughput_netperf(std::string_view output) {
    std::optional<double> result;
    for (std::string_view line : split_lines(output)) {
        auto tokens = split_ws(line);
        if (tokens.size() < 4) continue;
        bool all_numeric = true;
        double last_value = 0.0;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            double v;
            if (!parse_double(tokens[i], v)) {
                all_numeric = false;
                break;
            }
            if (i + 1 == tokens.size()) last_value = v;
        }
        if (all_numeric) result = last_value; // keep the last such line
    }
    if (!result || *result < 0.0) {
        throw UnparseableOutputError("no netperf result line in output: \"" + snippet(output) +
                                     "\"");
    }
    return *result;
}

double parse_throughput_iperf(std::string_view output) {
    std::optional<double> last_any;
    std::optional<double> last_receiver;
    for (std::string_view line : split_lines(output)) {
        auto tokens = split_ws(line);
        bool is_receiver = false;
        std::optional<double> line_value;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i] == "receiver") is_receiver = true;
            if (i + 1 >= tokens.size()) continue;
            std::string_view unit = tokens[i + 1];
            double factor;
            if (unit == "Gbits/sec") {
                factor = 1000.0;
            } else if (unit == "Mbits/sec") {
                factor = 1.0;
            } else if (unit == "Kbits/sec") {
                factor = 0.001;
            } else if (unit == "bits/sec") {
                factor = 1e-6;
            } else {
                continue;
            }
            double v;
            if (parse_double(tokens[i], v) && v >= 0.0) {
                line_value = v * factor;
            }
        }
        if (line_value) {
            last_any = line_value;
            if (is_receiver) last_receiver = line_value;
        }
    }
    if (last_receiver) return *last_receiver;
    if (last_any) return *last_any;
    throw UnparseableOutputError("no iperf bitrate in output: \"" + snippet(output) + "\"");
}

LatencyReport parse_latency_hping(std::string_view output) {
    static const std::regex re(
        R"(round-trip\s+min/avg/max\s*=\s*([0-9.]+)/([0-9.]+)/([0-9.]+)\s*ms)");
    std::string text(output);
    std::smatch m;
    if (!std::regex_search(text, m, re)) {
        throw UnparseableOutputError("no round-trip summary in output: \"" + snippet(output) +
                                     "\"");
    }
    LatencyReport rep;
    double* fields[3] = {&rep.min_ms, &rep.avg_ms, &rep.max_ms};
    for (int i = 0; i < 3; ++i) {
        // from_chars re-check rejects shapes the char class lets through ("1..2").
        const std::string num = m[i + 1].str();
        if (!parse_double(num, *fields[i])) {
            throw UnparseableOutputError("bad round-trip number '" + num + "'");
        }
    }
    if (!(rep.min_ms <= rep.avg_ms && rep.avg_ms <= rep.max_ms)) {
        throw UnparseableOutputError("round-trip numbers out of order: " + m[0].str());
    }
    return rep;
}

} // namespace evotune
