#include "knapga/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace knapga {

namespace {

void require_rate(double rate, const char* what)
{
    if (!(rate >= 0.0 && rate <= 1.0))
        throw ContractViolation(std::string(what) + " must lie in [0, 1]");
}

void require_same_length(const Chromosome& p1, const Chromosome& p2, std::size_t min_length)
{
    if (p1.size() != p2.size())
        throw ContractViolation("parents differ in length");
    if (p1.size() < min_length)
        throw ContractViolation("crossover needs chromosomes of length >= " +
                                std::to_string(min_length));
}

// Samples index i with probability weights[i] / sum(weights) by exact integer
// arithmetic. sum(weights) must be positive.
std::size_t sample_weighted(std::span<const std::int64_t> weights, std::int64_t total,
                            RandomSource& rng)
{
    auto ticket = static_cast<std::int64_t>(rng.uniform_index(static_cast<std::uint64_t>(total)));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (ticket < weights[i])
            return i;
        ticket -= weights[i];
    }
    return weights.size() - 1; // unreachable while total == sum(weights)
}

} // namespace

Population::Population(std::vector<Chromosome> members, const KnapsackInstance& inst)
    : members_(std::move(members))
{
    if (members_.empty())
        throw ContractViolation("population must not be empty");
    fitnesses_.reserve(members_.size());
    for (const auto& c : members_)
        fitnesses_.push_back(fitness(c, inst));
}

std::string_view to_string(SelectionKind kind)
{
    switch (kind) {
    case SelectionKind::Rank: return "rank";
    case SelectionKind::RouletteWheel: return "roulette";
    case SelectionKind::Tournament: return "tournament";
    }
    return "?";
}

std::string_view to_string(CrossoverKind kind)
{
    return kind == CrossoverKind::OnePoint ? "one-point" : "two-point";
}

std::string_view to_string(MutationScope scope)
{
    return scope == MutationScope::Chromosome ? "chromosome" : "gene";
}

std::optional<SelectionKind> parse_selection_kind(std::string_view name)
{
    for (auto k : {SelectionKind::Rank, SelectionKind::RouletteWheel, SelectionKind::Tournament})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

std::optional<CrossoverKind> parse_crossover_kind(std::string_view name)
{
    for (auto k : {CrossoverKind::OnePoint, CrossoverKind::TwoPoint})
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

std::optional<MutationScope> parse_mutation_scope(std::string_view name)
{
    for (auto s : {MutationScope::Chromosome, MutationScope::Gene})
        if (to_string(s) == name)
            return s;
    return std::nullopt;
}

std::vector<std::size_t> fitness_ranks(std::span<const FitnessValue> fitnesses)
{
    std::vector<std::size_t> order(fitnesses.size());
    std::iota(order.begin(), order.end(), 0);
    std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) {
        return fitnesses[a] > fitnesses[b];
    });
    std::vector<std::size_t> rank(fitnesses.size());
    for (std::size_t r = 0; r < order.size(); ++r)
        rank[order[r]] = r + 1;
    return rank;
}

std::vector<double> rank_probabilities(std::span<const FitnessValue> fitnesses)
{
    if (fitnesses.empty())
        throw ContractViolation("rank_probabilities needs a non-empty fitness list");
    const auto n = fitnesses.size();
    const double total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
    auto rank = fitness_ranks(fitnesses);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = static_cast<double>(n + 1 - rank[i]) / total;
    return p;
}

std::size_t select_rank(std::span<const FitnessValue> fitnesses, RandomSource& rng)
{
    if (fitnesses.empty())
        throw ContractViolation("cannot select from an empty population");
    const auto n = fitnesses.size();
    auto rank = fitness_ranks(fitnesses);
    std::vector<std::int64_t> weights(n);
    for (std::size_t i = 0; i < n; ++i)
        weights[i] = static_cast<std::int64_t>(n + 1 - rank[i]);
    const auto total = static_cast<std::int64_t>(n * (n + 1) / 2);
    return sample_weighted(weights, total, rng);
}

std::size_t select_roulette(std::span<const FitnessValue> fitnesses, RandomSource& rng)
{
    if (fitnesses.empty())
        throw ContractViolation("cannot select from an empty population");
    std::vector<std::int64_t> weights(fitnesses.size());
    std::int64_t total = 0;
    for (std::size_t i = 0; i < fitnesses.size(); ++i) {
        weights[i] = fitnesses[i].value;
        total += weights[i];
    }
    if (total == 0)
        return static_cast<std::size_t>(rng.uniform_index(fitnesses.size()));
    return sample_weighted(weights, total, rng);
}

std::size_t select_tournament(std::span<const FitnessValue> fitnesses, std::size_t size,
                              RandomSource& rng)
{
    const auto n = fitnesses.size();
    if (size < 1 || size > n)
        throw ContractViolation("tournament size " + std::to_string(size) +
                                " outside [1, population size " + std::to_string(n) + "]");

    // Partial Fisher-Yates: the first `size` slots become the competitors.
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t i = 0; i < size; ++i) {
        auto j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
        std::swap(pool[i], pool[j]);
    }

    std::size_t winner = pool[0];
    for (std::size_t i = 1; i < size; ++i) {
        auto c = pool[i];
        if (fitnesses[c] > fitnesses[winner] || (fitnesses[c] == fitnesses[winner] && c < winner))
            winner = c;
    }
    return winner;
}

std::size_t select(const SelectionMethod& method, std::span<const FitnessValue> fitnesses,
                   RandomSource& rng)
{
    switch (method.kind) {
    case SelectionKind::Rank: return select_rank(fitnesses, rng);
    case SelectionKind::RouletteWheel: return select_roulette(fitnesses, rng);
    case SelectionKind::Tournament:
        return select_tournament(fitnesses, method.tournament_size, rng);
    }
    throw ContractViolation("unknown selection kind");
}

Offspring one_point_at(const Chromosome& p1, const Chromosome& p2, std::size_t cut)
{
    require_same_length(p1, p2, 2);
    const auto len = p1.size();
    if (cut < 1 || cut > len - 1)
        throw ContractViolation("one-point cut must lie in [1, L-1]");
    std::vector<Chromosome::Gene> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        const bool head = i < cut;
        a[i] = head ? p1[i] : p2[i];
        b[i] = head ? p2[i] : p1[i];
    }
    return {Chromosome(std::move(a)), Chromosome(std::move(b))};
}

Offspring two_point_at(const Chromosome& p1, const Chromosome& p2, std::size_t first,
                       std::size_t last)
{
    require_same_length(p1, p2, 3);
    const auto len = p1.size();
    if (first < 1 || first >= last || last > len - 1)
        throw ContractViolation("two-point cuts must satisfy 1 <= first < last <= L-1");
    std::vector<Chromosome::Gene> a(len), b(len);
    for (std::size_t i = 0; i < len; ++i) {
        const bool swapped = i >= first && i < last;
        a[i] = swapped ? p2[i] : p1[i];
        b[i] = swapped ? p1[i] : p2[i];
    }
    return {Chromosome(std::move(a)), Chromosome(std::move(b))};
}

Offspring crossover_one_point(const Chromosome& p1, const Chromosome& p2, RandomSource& rng)
{
    require_same_length(p1, p2, 2);
    auto cut = static_cast<std::size_t>(rng.uniform_between(1, p1.size() - 1));
    return one_point_at(p1, p2, cut);
}

Offspring crossover_two_point(const Chromosome& p1, const Chromosome& p2, RandomSource& rng)
{
    require_same_length(p1, p2, 3);
    const auto len = p1.size();
    auto first = static_cast<std::size_t>(rng.uniform_between(1, len - 2));
    auto last = static_cast<std::size_t>(rng.uniform_between(first + 1, len - 1));
    return two_point_at(p1, p2, first, last);
}

Offspring apply_crossover(const CrossoverMethod& method, const Chromosome& p1,
                          const Chromosome& p2, RandomSource& rng)
{
    require_rate(method.rate, "crossover rate");
    require_same_length(p1, p2, method.kind == CrossoverKind::OnePoint ? 2 : 3);
    if (!rng.bernoulli(method.rate))
        return {p1, p2};
    return method.kind == CrossoverKind::OnePoint ? crossover_one_point(p1, p2, rng)
                                                  : crossover_two_point(p1, p2, rng);
}

Chromosome mutate_bit_flip(Chromosome c, const MutationConfig& cfg, RandomSource& rng)
{
    require_rate(cfg.rate, "mutation rate");
    if (c.size() == 0)
        return c;
    if (cfg.scope == MutationScope::Gene) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (rng.bernoulli(cfg.rate))
                c.flip(i);
        return c;
    }
    if (rng.bernoulli(cfg.rate))
        c.flip(static_cast<std::size_t>(rng.uniform_index(c.size())));
    return c;
}

} // namespace knapga
