#pragma once

#include <string>
#include <vector>

#include "evotune/bench_parsers.hpp"
#include "evotune/evaluator.hpp"
#include "evotune/sys_apply.hpp"

namespace evotune {

enum class BenchmarkParser { Netperf, Iperf };

// External benchmark invocation. The template is an argv list; {host},
// {port} and {duration} are substituted before each run. No shell anywhere,
// so there is no quoting layer to get wrong.
struct BenchmarkCommand {
    std::vector<std::string> argv_template;
    std::string host = "127.0.0.1";
    int port = 12865;
    int duration_s = 10;
    int grace_s = 15; // extra wall-clock allowance before declaring a timeout
    BenchmarkParser parser = BenchmarkParser::Netperf;

    CommandLine materialize() const;
};

// Fitness = measured throughput: applies the chromosome to the system, runs
// the configured benchmark, parses its output. Strictly sequential use only;
// the session must hold a snapshot before the first evaluation.
class LiveEvaluator : public FitnessEvaluator {
public:
    LiveEvaluator(ApplySession& session, CommandRunner& runner, BenchmarkCommand bench);

    // Throws ApplyFailedError / BenchmarkTimeoutError / UnparseableOutputError.
    double evaluate(const ParameterSpace& space, const Chromosome& c) override;
    bool deterministic() const override { return false; }
    bool safe_for_parallel() const override { return false; }

private:
    ApplySession& session_;
    CommandRunner& runner_;
    BenchmarkCommand bench_;
};

} // namespace evotune
