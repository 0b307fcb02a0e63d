#include "evotune/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace evotune {

namespace {

std::size_t scaled_count(double fraction, std::size_t size) {
    // The epsilon keeps e.g. 0.2 * 10 from landing on 1.9999... and flooring to 1.
    return static_cast<std::size_t>(std::floor(fraction * static_cast<double>(size) + 1e-9));
}

double fitness_of(const Individual& ind) {
    if (!ind.fitness) throw UnevaluatedIndividualError(ind.id);
    return *ind.fitness;
}

// Ties on fitness break toward the lower (older) id so ordering is total.
bool better_first(const Individual& a, const Individual& b) {
    double fa = fitness_of(a), fb = fitness_of(b);
    if (fa != fb) return fa > fb;
    return a.id < b.id;
}

bool worse_first(const Individual& a, const Individual& b) {
    double fa = fitness_of(a), fb = fitness_of(b);
    if (fa != fb) return fa < fb;
    return a.id < b.id;
}

// Mutation that reports whether it actually fired, so the survivor pass can
// tell an untouched chromosome from a re-rolled one.
bool mutate_impl(const ParameterSpace& space, Chromosome& c, double probability,
                 RandomSource& rng) {
    if (c.genes.size() != space.size()) {
        throw SpaceMismatchError("mutate: chromosome does not match space");
    }
    // Always consume the roll, even at probability 0 or 1, so the stream of
    // draws does not depend on the outcome.
    double roll = rng.uniform01();
    if (roll >= probability) return false;
    std::size_t idx = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(space.size()) - 1));
    c.genes[idx] = sample_gene(space[idx], rng);
    return true;
}

std::vector<Individual> remove_worst(std::vector<Individual> population, std::size_t count) {
    if (count == 0) return population;
    if (count >= population.size()) {
        population.clear();
        return population;
    }
    std::vector<const Individual*> ranked;
    ranked.reserve(population.size());
    for (const auto& ind : population) ranked.push_back(&ind);
    std::sort(ranked.begin(), ranked.end(),
              [](const Individual* a, const Individual* b) { return worse_first(*a, *b); });
    std::unordered_set<std::uint64_t> doomed;
    for (std::size_t i = 0; i < count; ++i) doomed.insert(ranked[i]->id);
    std::vector<Individual> kept;
    kept.reserve(population.size() - count);
    for (auto& ind : population) {
        if (!doomed.count(ind.id)) kept.push_back(std::move(ind));
    }
    return kept;
}

} // namespace

void validate(const GaConfig& cfg) {
    if (cfg.population_size < 2) {
        throw InvalidConfigError("population_size must be at least 2");
    }
    if (cfg.generations < 1) {
        throw InvalidConfigError("generations must be at least 1");
    }
    if (!(cfg.selection_fraction > 0.0) || cfg.selection_fraction > 0.5) {
        throw InvalidConfigError("selection_fraction must be in (0, 0.5]");
    }
    if (cfg.crossover_probability < 0.0 || cfg.crossover_probability > 1.0) {
        throw InvalidConfigError("crossover_probability must be in [0, 1]");
    }
    if (cfg.mutation_probability < 0.0 || cfg.mutation_probability > 1.0) {
        throw InvalidConfigError("mutation_probability must be in [0, 1]");
    }
}

std::vector<Individual> init_population(const ParameterSpace& space, const GaConfig& cfg,
                                        RandomSource& rng) {
    std::vector<Individual> pop;
    const auto count = static_cast<std::size_t>(cfg.population_size);
    pop.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Individual ind;
        ind.chromosome = sample_chromosome(space, rng);
        ind.birth_generation = 0;
        ind.id = i;
        pop.push_back(std::move(ind));
    }
    return pop;
}

std::vector<Individual> cull(std::vector<Individual> population, double selection_fraction) {
    std::size_t n = scaled_count(selection_fraction, population.size());
    return remove_worst(std::move(population), n);
}

std::vector<Individual> select_parents(const std::vector<Individual>& population,
                                       double selection_fraction) {
    std::size_t k = scaled_count(selection_fraction, population.size());
    if (k > population.size()) k = population.size();
    k -= k % 2; // pairs only
    std::vector<Individual> ranked(population.begin(), population.end());
    std::sort(ranked.begin(), ranked.end(), better_first);
    ranked.resize(k);
    return ranked;
}

std::pair<Chromosome, Chromosome> crossover(const Chromosome& a, const Chromosome& b,
                                            double probability, RandomSource& rng) {
    if (a.genes.size() != b.genes.size()) {
        throw SpaceMismatchError("crossover: parents have different gene counts");
    }
    Chromosome ca = a, cb = b;
    for (std::size_t i = 0; i < a.genes.size(); ++i) {
        // Draw for every gene regardless of outcome; keeps the stream stable.
        if (rng.uniform01() < probability) {
            std::swap(ca.genes[i], cb.genes[i]);
        }
    }
    return {std::move(ca), std::move(cb)};
}

Chromosome mutate(const Chromosome& c, double p, const ParameterSpace& space, RandomSource& rng) {
    Chromosome out = c;
    mutate_impl(space, out, p, rng);
    return out;
}

RunReport run(const ParameterSpace& space, const GaConfig& cfg, FitnessEvaluator& evaluator,
              const Chromosome& default_chromosome, const RunOptions& opts) {
    validate(cfg);
    if (space.empty()) {
        throw InvalidConfigError("parameter space is empty");
    }
    validate_chromosome(space, default_chromosome);

    RandomSource rng(cfg.seed);
    RunReport report;
    report.config = cfg;
    report.space_hash = space_hash_string(space);

    std::uint64_t eval_count = 0;
    auto check_abort = [&] {
        if (opts.abort && opts.abort->load(std::memory_order_relaxed)) {
            throw AbortedError();
        }
    };
    auto evaluate_one = [&](Individual& ind, int generation) {
        check_abort();
        try {
            ind.fitness = evaluator.evaluate(space, ind.chromosome);
        } catch (const AbortedError&) {
            throw;
        } catch (const EvaluationError&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError(generation, ind.id, e.what());
        }
        ++eval_count;
    };

    std::vector<Individual> pop = init_population(space, cfg, rng);
    std::uint64_t next_id = static_cast<std::uint64_t>(cfg.population_size);

    Individual overall_best;
    bool have_best = false;

    for (int g = 0; g < cfg.generations; ++g) {
        check_abort();

        // Anyone without a score: the initial population in generation 0, and
        // survivors whose chromosome was re-rolled by --mutate-survivors.
        for (auto& ind : pop) {
            if (!ind.fitness) evaluate_one(ind, g);
        }

        double default_fitness;
        {
            check_abort();
            try {
                default_fitness = evaluator.evaluate(space, default_chromosome);
            } catch (const AbortedError&) {
                throw;
            } catch (const EvaluationError&) {
                throw;
            } catch (const std::exception& e) {
                throw EvaluationError(
                    g, std::numeric_limits<std::uint64_t>::max(),
                    std::string("default chromosome evaluation failed: ") + e.what());
            }
            ++eval_count;
        }

        GenerationStats stats;
        stats.generation = g;
        stats.default_fitness = default_fitness;
        {
            const Individual* best = &pop.front();
            double worst = fitness_of(pop.front());
            double sum = 0.0;
            for (const auto& ind : pop) {
                double f = fitness_of(ind);
                sum += f;
                if (f < worst) worst = f;
                if (better_first(ind, *best)) best = &ind;
            }
            stats.best = fitness_of(*best);
            stats.worst = worst;
            stats.mean = sum / static_cast<double>(pop.size());
            stats.best_chromosome = best->chromosome;

            if (!have_best || fitness_of(*best) > fitness_of(overall_best)) {
                overall_best = *best;
                have_best = true;
            }
        }
        report.per_generation.push_back(std::move(stats));

        // Reproduction. k is the selection count; small populations degrade
        // from pairwise crossover to a single mutated clone of the best so a
        // generation always produces at least one offspring (see GaConfig
        // notes in the header).
        std::size_t k = scaled_count(cfg.selection_fraction, pop.size());
        std::size_t pairs, clone_n, cull_n;
        if (k >= 2) {
            pairs = k / 2;
            clone_n = k % 2;
            cull_n = k;
        } else if (k == 1) {
            pairs = 0;
            clone_n = 1;
            cull_n = 1;
        } else {
            if (pop.size() >= 4) {
                pairs = 1;
                clone_n = 0;
                cull_n = 2;
            } else {
                pairs = 0;
                clone_n = 1;
                cull_n = 1;
            }
        }

        pop = remove_worst(std::move(pop), cull_n);

        std::size_t parent_n = std::max<std::size_t>(2 * pairs, 1);
        std::vector<Individual> parents(pop.begin(), pop.end());
        std::sort(parents.begin(), parents.end(), better_first);
        if (parents.size() > parent_n) parents.resize(parent_n);

        std::vector<Individual> offspring;
        offspring.reserve(2 * pairs + clone_n);
        auto add_child = [&](Chromosome c) {
            mutate_impl(space, c, cfg.mutation_probability, rng);
            Individual child;
            child.chromosome = std::move(c);
            child.birth_generation = g + 1;
            child.id = next_id++;
            evaluate_one(child, g);
            offspring.push_back(std::move(child));
        };
        for (std::size_t p = 0; p < pairs; ++p) {
            auto [ca, cb] = crossover(parents[2 * p].chromosome, parents[2 * p + 1].chromosome,
                                      cfg.crossover_probability, rng);
            add_child(std::move(ca));
            add_child(std::move(cb));
        }
        if (clone_n) {
            add_child(parents.front().chromosome);
        }
        for (auto& child : offspring) pop.push_back(std::move(child));

        if (opts.mutate_survivors) {
            for (auto& ind : pop) {
                if (ind.birth_generation > g) continue; // fresh offspring already mutated
                Chromosome c = ind.chromosome;
                if (mutate_impl(space, c, cfg.mutation_probability, rng)) {
                    ind.chromosome = std::move(c);
                    ind.fitness.reset(); // re-scored at the top of the next generation
                }
            }
        }

        if (opts.on_generation_end) {
            opts.on_generation_end(g, pop);
        }
    }

    report.overall_best = std::move(overall_best);
    report.evaluation_count = eval_count;
    return report;
}

} // namespace evotune
