#include "evotune/live_evaluator.hpp"

namespace evotune {

namespace {

void replace_all(std::string& s, std::string_view from, std::string_view to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
}

std::string stderr_snippet(const std::string& text) {
    std::string s = text.substr(0, 120);
    for (char& c : s) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
    }
    return s;
}

} // namespace

CommandLine BenchmarkCommand::materialize() const {
    CommandLine cmd;
    cmd.argv.reserve(argv_template.size());
    for (const auto& token : argv_template) {
        std::string t = token;
        replace_all(t, "{host}", host);
        replace_all(t, "{port}", std::to_string(port));
        replace_all(t, "{duration}", std::to_string(duration_s));
        cmd.argv.push_back(std::move(t));
    }
    return cmd;
}

LiveEvaluator::LiveEvaluator(ApplySession& session, CommandRunner& runner, BenchmarkCommand bench)
    : session_(session), runner_(runner), bench_(std::move(bench)) {}

double LiveEvaluator::evaluate(const ParameterSpace& space, const Chromosome& c) {
    ApplyOutcome outcome = session_.apply(space, c);
    if (!outcome.all_applied) {
        for (const auto& status : outcome.per_command) {
            if (!status.applied) {
                // The session already rolled back; report which key refused.
                std::size_t idx = static_cast<std::size_t>(&status - outcome.per_command.data());
                throw ApplyFailedError(space[idx].key, status.error);
            }
        }
        throw ApplyFailedError("unknown", "apply failed without a per-command status");
    }

    CommandLine cmd = bench_.materialize();
    auto timeout = std::chrono::seconds(bench_.duration_s + bench_.grace_s);
    CommandResult res = runner_.run(cmd, std::chrono::milliseconds(timeout));
    if (res.timed_out) {
        throw BenchmarkTimeoutError("benchmark exceeded " + std::to_string(timeout.count()) +
                                    "s (" + cmd.display() + ")");
    }
    if (res.exit_code != 0) {
        throw UnparseableOutputError("benchmark exited " + std::to_string(res.exit_code) + ": " +
                                     stderr_snippet(res.stderr_text));
    }
    switch (bench_.parser) {
        case BenchmarkParser::Iperf:
            return parse_throughput_iperf(res.stdout_text);
        case BenchmarkParser::Netperf:
        default:
            return parse_throughput_netperf(res.stdout_text);
    }
}

} // namespace evotune
