#pragma once

#include "evotune/param_space.hpp"

namespace evotune {

// Scores one configuration in Mbit/s. Implementations either return a finite
// value >= 0 or throw an evotune::Error subclass; there is no silent default.
class FitnessEvaluator {
public:
    virtual ~FitnessEvaluator() = default;

    virtual double evaluate(const ParameterSpace& space, const Chromosome& c) = 0;

    // True when evaluate() is a pure function of the chromosome.
    virtual bool deterministic() const = 0;

    // True when concurrent evaluate() calls are safe. The engine itself runs
    // strictly sequentially; this flag exists for callers that batch.
    virtual bool safe_for_parallel() const = 0;
};

// Fixed score for every chromosome. Used where a live run was requested in
// dry-run mode: commands get logged, nothing is measured.
class ConstantEvaluator : public FitnessEvaluator {
public:
    explicit ConstantEvaluator(double value = 0.0) : value_(value) {}

    double evaluate(const ParameterSpace&, const Chromosome&) override { return value_; }
    bool deterministic() const override { return true; }
    bool safe_for_parallel() const override { return true; }

private:
    double value_;
};

} // namespace evotune
