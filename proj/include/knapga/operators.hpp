#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "knapga/knapsack.hpp"
#include "knapga/random.hpp"

namespace knapga {

/// Chromosomes together with their cached fitness values.
class Population {
public:
    /// Evaluates every member against `inst`. Throws ContractViolation when
    /// `members` is empty or a member has the wrong length.
    Population(std::vector<Chromosome> members, const KnapsackInstance& inst);

    std::size_t size() const noexcept { return members_.size(); }
    std::span<const Chromosome> members() const noexcept { return members_; }
    std::span<const FitnessValue> fitnesses() const noexcept { return fitnesses_; }
    const Chromosome& operator[](std::size_t i) const { return members_[i]; }

    friend bool operator==(const Population&, const Population&) = default;

private:
    std::vector<Chromosome> members_;
    std::vector<FitnessValue> fitnesses_;
};

enum class SelectionKind { Rank, RouletteWheel, Tournament };
enum class CrossoverKind { OnePoint, TwoPoint };
enum class MutationScope { Chromosome, Gene };

struct SelectionMethod {
    SelectionKind kind = SelectionKind::Tournament;
    std::size_t tournament_size = 3; // only read for Tournament

    static SelectionMethod rank() { return {SelectionKind::Rank, 0}; }
    static SelectionMethod roulette() { return {SelectionKind::RouletteWheel, 0}; }
    static SelectionMethod tournament(std::size_t size) { return {SelectionKind::Tournament, size}; }

    friend bool operator==(const SelectionMethod&, const SelectionMethod&) = default;
};

struct CrossoverMethod {
    CrossoverKind kind = CrossoverKind::OnePoint;
    double rate = 0.8;

    friend bool operator==(const CrossoverMethod&, const CrossoverMethod&) = default;
};

/// Bit-flip mutation. With Chromosome scope, `rate` is the chance that a child
/// gets exactly one uniformly chosen gene flipped; with Gene scope every gene
/// flips independently with probability `rate`.
struct MutationConfig {
    double rate = 0.4;
    MutationScope scope = MutationScope::Chromosome;

    friend bool operator==(const MutationConfig&, const MutationConfig&) = default;
};

std::string_view to_string(SelectionKind kind);
std::string_view to_string(CrossoverKind kind);
std::string_view to_string(MutationScope scope);
std::optional<SelectionKind> parse_selection_kind(std::string_view name);
std::optional<CrossoverKind> parse_crossover_kind(std::string_view name);
std::optional<MutationScope> parse_mutation_scope(std::string_view name);

// ---- selection ------------------------------------------------------------

/// Ranks by fitness, descending; equal fitness keeps the lower index first.
/// Returns rank[i] in 1..n for each member i.
std::vector<std::size_t> fitness_ranks(std::span<const FitnessValue> fitnesses);

/// Linear ranking: member with rank r gets weight n + 1 - r, normalised by
/// n(n + 1) / 2. Throws ContractViolation on an empty list.
std::vector<double> rank_probabilities(std::span<const FitnessValue> fitnesses);

std::size_t select_rank(std::span<const FitnessValue> fitnesses, RandomSource& rng);

/// Fitness-proportionate. An all-zero population is sampled uniformly.
std::size_t select_roulette(std::span<const FitnessValue> fitnesses, RandomSource& rng);

/// Draws `size` distinct members and returns the fittest (lowest index on ties).
std::size_t select_tournament(std::span<const FitnessValue> fitnesses, std::size_t size,
                              RandomSource& rng);

std::size_t select(const SelectionMethod& method, std::span<const FitnessValue> fitnesses,
                   RandomSource& rng);

inline std::size_t select_rank(const Population& pop, RandomSource& rng)
{
    return select_rank(pop.fitnesses(), rng);
}
inline std::size_t select_roulette(const Population& pop, RandomSource& rng)
{
    return select_roulette(pop.fitnesses(), rng);
}
inline std::size_t select_tournament(const Population& pop, std::size_t size, RandomSource& rng)
{
    return select_tournament(pop.fitnesses(), size, rng);
}

// ---- crossover ------------------------------------------------------------

using Offspring = std::pair<Chromosome, Chromosome>;

/// Tail exchange at cut k, 1 <= k <= L - 1.
Offspring one_point_at(const Chromosome& p1, const Chromosome& p2, std::size_t cut);

/// Swaps genes in [first, last), 1 <= first < last <= L - 1.
Offspring two_point_at(const Chromosome& p1, const Chromosome& p2, std::size_t first,
                       std::size_t last);

/// Cut uniform in {1, ..., L-1}. Requires L >= 2.
Offspring crossover_one_point(const Chromosome& p1, const Chromosome& p2, RandomSource& rng);

/// First cut uniform in {1, ..., L-2}, second uniform in {first+1, ..., L-1}.
/// Requires L >= 3.
Offspring crossover_two_point(const Chromosome& p1, const Chromosome& p2, RandomSource& rng);

/// Crosses with probability method.rate, otherwise returns copies of the parents.
Offspring apply_crossover(const CrossoverMethod& method, const Chromosome& p1,
                          const Chromosome& p2, RandomSource& rng);

// ---- mutation -------------------------------------------------------------

Chromosome mutate_bit_flip(Chromosome c, const MutationConfig& cfg, RandomSource& rng);

} // namespace knapga
