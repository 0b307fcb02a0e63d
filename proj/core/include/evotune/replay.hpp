#pragma once

#include <map>
#include <string>
#include <string_view>

#include "evotune/evaluator.hpp"

namespace evotune {

// Exact-match lookup table of previously measured configurations. No
// interpolation: a chromosome is either in the cache or an error. The JSON
// form is {schema_version, space_hash, entries: {canonical key -> Mbit/s}}
// with entries in sorted key order, so saving is deterministic.
struct ReplayCache {
    std::string space_hash;
    std::map<std::string, double> entries; // canonical_chromosome_key -> Mbit/s

    static ReplayCache parse(std::string_view json_text); // throws Error on schema problems
    static ReplayCache load(const std::string& path);
    std::string to_json_text() const;
    void save(const std::string& path) const;
};

class ReplayEvaluator : public FitnessEvaluator {
public:
    // Refuses a cache recorded for a different space (SpaceMismatchError).
    ReplayEvaluator(ReplayCache cache, const ParameterSpace& space);

    double evaluate(const ParameterSpace&, const Chromosome& c) override; // CacheMissError on miss
    bool deterministic() const override { return true; }
    bool safe_for_parallel() const override { return true; }

    const ReplayCache& cache() const { return cache_; }

private:
    ReplayCache cache_;
};

// Decorator that forwards to an inner evaluator and records every result,
// so an expensive run can later be replayed offline. Re-measuring the same
// chromosome overwrites its entry; with a noisy inner evaluator the last
// measurement wins and a replay will not reproduce the original trajectory.
class RecordingEvaluator : public FitnessEvaluator {
public:
    RecordingEvaluator(FitnessEvaluator& inner, const ParameterSpace& space);

    double evaluate(const ParameterSpace& space, const Chromosome& c) override;
    bool deterministic() const override { return inner_.deterministic(); }
    bool safe_for_parallel() const override { return false; } // shared cache mutation

    const ReplayCache& cache() const { return cache_; }

private:
    FitnessEvaluator& inner_;
    ReplayCache cache_;
};

} // namespace evotune
