#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace knapga {

/// Raised when a caller breaks an operation's precondition (length mismatch,
/// out-of-range operator parameter, and so on).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Problems with a knapsack instance, either built in code or read from disk.
class InstanceError : public std::runtime_error {
public:
    enum class Kind { MissingFile, Malformed, LengthMismatch, NegativeNumber, Overflow, Io };

    InstanceError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

/// Total profit of the packed items; zero for overweight selections.
struct FitnessValue {
    std::int64_t value = 0;

    friend auto operator<=>(const FitnessValue&, const FitnessValue&) = default;
};

/// Fixed-length bitstring genome. Gene i set means item i is packed.
class Chromosome {
public:
    using Gene = std::uint8_t;

    /// All-zero chromosome of the given length.
    explicit Chromosome(std::size_t length) : genes_(length, 0) {}

    /// Throws ContractViolation if any gene is not 0 or 1.
    explicit Chromosome(std::vector<Gene> genes);

    /// Parses a string of '0'/'1' characters, e.g. "00110".
    static Chromosome from_string(std::string_view bits);

    std::size_t size() const noexcept { return genes_.size(); }
    Gene operator[](std::size_t i) const { return genes_[i]; }
    std::span<const Gene> genes() const noexcept { return genes_; }

    void flip(std::size_t i) { genes_.at(i) ^= 1; }

    std::string to_string() const;

    friend bool operator==(const Chromosome&, const Chromosome&) = default;

private:
    std::vector<Gene> genes_;
};

class KnapsackInstance {
public:
    /// Validates the instance: equal non-empty lengths, no negative entries,
    /// and weight and value totals representable in 64 bits.
    KnapsackInstance(std::vector<std::int64_t> weights, std::vector<std::int64_t> values,
                     std::int64_t capacity);

    std::size_t size() const noexcept { return weights_.size(); }
    std::span<const std::int64_t> weights() const noexcept { return weights_; }
    std::span<const std::int64_t> values() const noexcept { return values_; }
    std::int64_t capacity() const noexcept { return capacity_; }
    std::int64_t weight_sum() const noexcept { return weight_sum_; }
    std::int64_t value_sum() const noexcept { return value_sum_; }

    friend bool operator==(const KnapsackInstance& a, const KnapsackInstance& b)
    {
        return a.weights_ == b.weights_ && a.values_ == b.values_ && a.capacity_ == b.capacity_;
    }

private:
    std::vector<std::int64_t> weights_;
    std::vector<std::int64_t> values_;
    std::int64_t capacity_;
    std::int64_t weight_sum_ = 0;
    std::int64_t value_sum_ = 0;
};

/// The 17-item instance with capacity 29 used throughout the experiments.
const KnapsackInstance& paper_instance();

std::int64_t total_weight(const Chromosome& c, const KnapsackInstance& inst);

/// Value sum of the packed items if they fit, otherwise 0 (death penalty).
FitnessValue fitness(const Chromosome& c, const KnapsackInstance& inst);

struct OptimalSolution {
    FitnessValue value;
    Chromosome witness;
};

/// Exact optimum via the O(n * capacity) dynamic-programming table. The
/// witness is reconstructed preferring to leave an item out on ties.
OptimalSolution dp_optimal(const KnapsackInstance& inst);

/// JSON document: {"weights": [...], "values": [...], "capacity": int}.
KnapsackInstance parse_instance(std::string_view json_text);
std::string format_instance(const KnapsackInstance& inst);

KnapsackInstance load_instance(const std::filesystem::path& path);
void save_instance(const KnapsackInstance& inst, const std::filesystem::path& path);

} // namespace knapga
