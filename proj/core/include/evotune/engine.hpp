#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "evotune/evaluator.hpp"
#include "evotune/param_space.hpp"

namespace evotune {

struct GaConfig {
    int population_size = 80;
    int generations = 40;
    // Fraction of the population culled each generation; the same count of
    // top individuals becomes parents.
    double selection_fraction = 0.10;
    double crossover_probability = 0.50; // per-gene swap chance
    double mutation_probability = 0.16;  // per-offspring chance of one resampled gene
    std::uint64_t seed = 1;
};

// Field-range checks (population >= 2, generations >= 1, selection in (0, 0.5],
// probabilities in [0, 1]). Throws InvalidConfigError.
//
// Deliberately does NOT require floor(selection_fraction * population_size)
// >= 1: small populations where that floor is 0 are still useful (and fast),
// and run() handles them with a documented minimal reproduction step instead
// of rejecting them. See run().
void validate(const GaConfig& cfg);

struct Individual {
    Chromosome chromosome;
    std::optional<double> fitness; // Mbit/s; set exactly once, never recomputed
    int birth_generation = 0;
    std::uint64_t id = 0;
};

struct GenerationStats {
    int generation = 0;
    double best = 0.0;
    double worst = 0.0;
    double mean = 0.0;
    double default_fitness = 0.0; // the baseline chromosome, re-measured every generation
    Chromosome best_chromosome;
};

struct RunReport {
    GaConfig config;
    std::string space_hash;
    std::vector<GenerationStats> per_generation;
    Individual overall_best;
    std::uint64_t evaluation_count = 0;
};

struct RunOptions {
    // Literal-reading mutation mode: after offspring are inserted, every
    // survivor takes its own mutation roll too; a survivor whose roll fires
    // has its fitness reset and is re-measured next generation. Off by
    // default because it breaks the monotone best-fitness guarantee.
    bool mutate_survivors = false;

    // Checked before every evaluation and at each generation top; when it
    // reads true the run throws AbortedError, which unwinds through any live
    // apply session so its restore still happens.
    const std::atomic<bool>* abort = nullptr;

    // Called at the end of every generation body, after offspring insertion
    // (the generation boundary: population size is back at configured size).
    std::function<void(int generation, const std::vector<Individual>&)> on_generation_end;
};

// The individual GA steps, usable on their own. run() composes exactly these.

// population_size individuals, sampled, fitness unset, birth_generation 0,
// ids 0..n-1.
std::vector<Individual> init_population(const ParameterSpace& space, const GaConfig& cfg,
                                        RandomSource& rng);

// Removes the floor(selection_fraction * population.size()) lowest-fitness
// individuals; among equals the lower id goes first. Requires every fitness
// set (UnevaluatedIndividualError).
std::vector<Individual> cull(std::vector<Individual> population, double selection_fraction);

// The top floor(selection_fraction * population.size()) individuals by
// fitness, descending, ties by lower id first; an odd count is truncated by
// one so pairs are complete.
std::vector<Individual> select_parents(const std::vector<Individual>& population,
                                       double selection_fraction);

// Uniform crossover: each gene index independently swaps between the children
// with probability p. Child A starts from a, child B from b.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b, double p,
                                            RandomSource& rng);

// With probability p, resamples one uniformly chosen gene from its spec's
// range (which may reproduce the same value); otherwise returns c unchanged.
Chromosome mutate(const Chromosome& c, double p, const ParameterSpace& space, RandomSource& rng);

// Runs the full life cycle for cfg.generations generations:
//   evaluate unevaluated individuals (in id order) -> evaluate the default
//   chromosome -> record stats -> cull -> select parents -> crossover each
//   consecutive pair -> mutate every offspring -> insert offspring (evaluated
//   on creation) with birth_generation = current + 1.
//
// Offspring counts per generation, with k = floor(selection_fraction * pop):
//   k >= 2: k/2 pairs; odd k is topped up by a mutated clone of the best
//           parent; k culled.
//   k == 1: clone-only (one mutated copy of the best individual); 1 culled.
//   k == 0: the config is below the spec'd floor(sel*pop) >= 1 regime; the
//           engine still makes the minimal meaningful GA step: one pair from
//           the top two individuals, 2 culled (populations of 2 or 3 fall
//           back to clone-only so enough survivors remain to breed from).
//
// Deterministic: the same (seed, space, config, deterministic evaluator)
// produces a byte-identical report. Evaluator failures propagate as
// EvaluationError carrying generation and individual id.
RunReport run(const ParameterSpace& space, const GaConfig& cfg, FitnessEvaluator& evaluator,
              const Chromosome& default_chromosome, const RunOptions& opts = {});

} // namespace evotune
