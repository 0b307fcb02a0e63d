#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "evotune/evaluator.hpp"
#include "evotune/random.hpp"

namespace evotune {

// Per-gene response over the gene's normalized value t in [0, 1].
struct CurveConstant {};                                      // factor 1 everywhere
struct CurveLinear { double lo = 1.0; double hi = 1.0; };     // lo + (hi-lo)*t
struct CurvePeak { double lo = 1.0; double hi = 1.0; double center = 0.5; }; // tent, hi at center
using ResponseCurve = std::variant<CurveConstant, CurveLinear, CurvePeak>;

struct SimInteraction {
    std::string a;
    std::string b;
    double weight = 0.0; // added as weight * t_a * t_b
};

// A synthetic throughput surface:
//   clamp(base * prod(factor_i(t_i)) + sum(w * t_a * t_b) + noise, 0, cap)
// It exists so search behavior can be tested against exhaustive enumeration
// and so runs are reproducible at a desk without two lab servers. Parameters
// live in versioned fixture JSON files (see fixtures/), never in code.
struct SimModel {
    std::string name;
    double base_mbps = 0.0;
    double cap_mbps = 0.0;
    double noise_stddev_mbps = 0.0;
    std::vector<std::pair<std::string, ResponseCurve>> curves; // keyed by spec key
    std::vector<SimInteraction> interactions;

    // Fixture JSON: {name?, base_mbps, cap_mbps, noise_stddev_mbps?,
    // genes: {key: {curve: constant|linear|peak, lo?, hi?, center?}},
    // interactions?: [{a, b, weight}]}. Malformed input raises Error.
    static SimModel parse(std::string_view json_text);
    static SimModel load(const std::string& path);
};

// Normalized position of a gene in its range: 0 at min, 1 at max; a
// degenerate range reads 0. Triples use the mean of their component positions.
double normalized_gene(const ParameterSpec& spec, const GeneValue& g);
double curve_factor(const ResponseCurve& curve, double t);

class SimEvaluator : public FitnessEvaluator {
public:
    // Binds the model to a space by key: the model must define exactly one
    // curve per spec key and reference only those keys in interactions,
    // otherwise ModelMismatchError. The noise stream is the evaluator's own
    // (independent of the engine's), so swapping evaluators never shifts the
    // GA's draw sequence; with zero noise no draws are consumed at all.
    SimEvaluator(SimModel model, const ParameterSpace& space, std::uint64_t noise_seed = 0);

    double evaluate(const ParameterSpace& space, const Chromosome& c) override;
    bool deterministic() const override { return model_.noise_stddev_mbps == 0.0; }
    bool safe_for_parallel() const override { return model_.noise_stddev_mbps == 0.0; }

    const SimModel& model() const { return model_; }

private:
    SimModel model_;
    std::vector<ResponseCurve> curve_by_gene_; // space order
    std::vector<std::tuple<std::size_t, std::size_t, double>> interactions_by_index_;
    std::uint64_t fingerprint_ = 0;
    const ParameterSpace* bound_space_ = nullptr; // fast path for repeat calls
    RandomSource noise_rng_;
};

} // namespace evotune
