#include "knapga/engine.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace knapga {

void validate(const GaConfig& cfg, const KnapsackInstance& inst)
{
    if (cfg.generations < 1)
        throw ContractViolation("generations must be >= 1");
    if (cfg.population_size < 2 || cfg.population_size % 2 != 0)
        throw ContractViolation("population size must be even and >= 2");
    if (cfg.elitism >= cfg.population_size)
        throw ContractViolation("elitism must be smaller than the population size");
    if (cfg.selection.kind == SelectionKind::Tournament &&
        (cfg.selection.tournament_size < 1 ||
         cfg.selection.tournament_size > cfg.population_size))
        throw ContractViolation("tournament size must lie in [1, population size]");
    if (!(cfg.crossover.rate >= 0.0 && cfg.crossover.rate <= 1.0))
        throw ContractViolation("crossover rate must lie in [0, 1]");
    if (!(cfg.mutation.rate >= 0.0 && cfg.mutation.rate <= 1.0))
        throw ContractViolation("mutation rate must lie in [0, 1]");
    const std::size_t min_len = cfg.crossover.kind == CrossoverKind::OnePoint ? 2 : 3;
    if (inst.size() < min_len)
        throw ContractViolation(std::string(to_string(cfg.crossover.kind)) +
                                " crossover needs at least " + std::to_string(min_len) +
                                " items");
}

Population init_population(const KnapsackInstance& inst, std::size_t size, RandomSource& rng)
{
    if (size < 2)
        throw ContractViolation("population size must be >= 2");
    std::vector<Chromosome> members;
    members.reserve(size);
    for (std::size_t m = 0; m < size; ++m) {
        std::vector<Chromosome::Gene> genes(inst.size());
        for (auto& g : genes)
            g = rng.coin() ? 1 : 0;
        members.emplace_back(std::move(genes));
    }
    return Population(std::move(members), inst);
}

Population step_generation(const Population& pop, const GaConfig& cfg,
                           const KnapsackInstance& inst, RandomSource& rng)
{
    const auto size = pop.size();
    if (cfg.elitism >= size)
        throw ContractViolation("elitism must be smaller than the population size");
    std::vector<Chromosome> next;
    next.reserve(size);

    if (cfg.elitism > 0) {
        std::vector<std::size_t> order(size);
        std::iota(order.begin(), order.end(), 0);
        auto fit = pop.fitnesses();
        std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });
        for (std::size_t e = 0; e < cfg.elitism; ++e)
            next.push_back(pop[order[e]]);
    }

    while (next.size() < size) {
        const auto& p1 = pop[select(cfg.selection, pop.fitnesses(), rng)];
        const auto& p2 = pop[select(cfg.selection, pop.fitnesses(), rng)];
        auto [c1, c2] = apply_crossover(cfg.crossover, p1, p2, rng);
        next.push_back(mutate_bit_flip(std::move(c1), cfg.mutation, rng));
        auto second = mutate_bit_flip(std::move(c2), cfg.mutation, rng);
        if (next.size() < size)
            next.push_back(std::move(second));
    }
    return Population(std::move(next), inst);
}

GenerationStats summarize_generation(const Population& pop, const KnapsackInstance& inst,
                                     std::size_t generation)
{
    auto fit = pop.fitnesses();
    std::size_t best = 0;
    std::int64_t total = 0;
    std::size_t feasible = 0;
    for (std::size_t i = 0; i < fit.size(); ++i) {
        if (fit[i] > fit[best])
            best = i;
        total += fit[i].value;
        // Zero fitness does not imply overweight (the empty packing is also 0).
        if (total_weight(pop[i], inst) <= inst.capacity())
            ++feasible;
    }
    GenerationStats s;
    s.generation = generation;
    s.best_fitness = fit[best];
    s.mean_fitness = static_cast<double>(total) / static_cast<double>(fit.size());
    s.feasible_count = feasible;
    s.best_chromosome = pop[best];
    return s;
}

ConvergenceTrace run_ga(const KnapsackInstance& inst, const GaConfig& cfg, FitnessValue optimum)
{
    validate(cfg, inst);
    RandomSource rng(cfg.seed);
    ConvergenceTrace trace;
    trace.config = cfg;
    trace.stats.reserve(cfg.generations);

    auto pop = init_population(inst, cfg.population_size, rng);
    for (std::size_t g = 0; g < cfg.generations; ++g) {
        if (g > 0)
            pop = step_generation(pop, cfg, inst, rng);
        trace.stats.push_back(summarize_generation(pop, inst, g));
        if (!trace.first_hit && trace.stats.back().best_fitness == optimum)
            trace.first_hit = g;
    }
    return trace;
}

} // namespace knapga
