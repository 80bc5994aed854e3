#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "knapga/knapsack.hpp"
#include "knapga/operators.hpp"
#include "knapga/random.hpp"

namespace knapga {

/// Everything that determines one GA run. Defaults are the baseline
/// experiment: 50 generations of 8 chromosomes, one-point crossover at 0.8,
/// single-flip mutation at 0.4, tournament of 3, no elitism.
struct GaConfig {
    std::size_t generations = 50;
    std::size_t population_size = 8;
    SelectionMethod selection = SelectionMethod::tournament(3);
    CrossoverMethod crossover{CrossoverKind::OnePoint, 0.8};
    MutationConfig mutation{0.4, MutationScope::Chromosome};
    std::size_t elitism = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

/// Throws ContractViolation describing the first broken constraint, including
/// those that depend on the instance (crossover needs L >= 2 or L >= 3).
void validate(const GaConfig& cfg, const KnapsackInstance& inst);

struct GenerationStats {
    std::size_t generation = 0;
    FitnessValue best_fitness;
    double mean_fitness = 0.0;
    std::size_t feasible_count = 0;
    Chromosome best_chromosome{0};

    friend bool operator==(const GenerationStats&, const GenerationStats&) = default;
};

struct ConvergenceTrace {
    GaConfig config;
    std::vector<GenerationStats> stats;
    std::optional<std::size_t> first_hit;

    friend bool operator==(const ConvergenceTrace&, const ConvergenceTrace&) = default;
};

/// Each gene an independent fair bit.
Population init_population(const KnapsackInstance& inst, std::size_t size, RandomSource& rng);

/// One generational replacement step.
///
/// The `cfg.elitism` fittest members (stable by index) are carried over
/// unchanged. Remaining slots are filled in pairs; for each pair the draws are
/// made in this order: parent 1, parent 2, crossover decision, cut points,
/// then mutation of child 1 and of child 2. When only one slot is left the
/// second child is discarded.
Population step_generation(const Population& pop, const GaConfig& cfg,
                           const KnapsackInstance& inst, RandomSource& rng);

/// Best member is the lowest index among those with maximal fitness.
GenerationStats summarize_generation(const Population& pop, const KnapsackInstance& inst,
                                     std::size_t generation);

/// Runs exactly cfg.generations generations. Entry 0 describes the initial
/// population, entry g the population after g steps. first_hit is the first
/// generation whose best fitness equals `optimum`.
ConvergenceTrace run_ga(const KnapsackInstance& inst, const GaConfig& cfg, FitnessValue optimum);

} // namespace knapga
