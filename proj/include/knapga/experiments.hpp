#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "knapga/engine.hpp"
#include "knapga/knapsack.hpp"

namespace knapga {

/// One of the six crossover x selection combinations.
///   1 one-point/rank     2 one-point/roulette     3 one-point/tournament(3)
///   4 two-point/rank     5 two-point/roulette     6 two-point/tournament(3)
struct Scenario {
    int id = 0;
    CrossoverKind crossover = CrossoverKind::OnePoint;
    SelectionMethod selection;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ContractViolation for ids outside 1..6.
Scenario scenario(int id);
std::vector<Scenario> all_scenarios();

/// Copy of `base` with the scenario's operators swapped in; rates and sizes
/// come from `base`.
GaConfig scenario_config(const Scenario& s, const GaConfig& base);

/// Scenario blocks are 10^6 seeds apart: seed0 + (id - 1) * 10^6 + replication.
inline constexpr std::uint64_t kScenarioSeedStride = 1'000'000;
std::uint64_t scenario_seed_base(std::uint64_t seed0, int scenario_id);

struct ScenarioRun {
    int scenario_id = 0;
    std::size_t replication = 0;
    ConvergenceTrace trace;
};

/// Per-run summary consumed by the report statistics.
struct RunOutcome {
    std::optional<std::size_t> first_hit;
    FitnessValue final_best;
};

struct ScenarioReport {
    int scenario_id = 0;
    std::string crossover; // "one-point", "two-point" or "custom"
    std::string selection; // "rank", "roulette", "tournament" or "custom"
    std::size_t replications = 0;
    std::size_t success_count = 0;
    double success_rate = 0.0;
    std::optional<double> first_hit_median;
    std::optional<std::pair<double, double>> first_hit_quartiles;
    double best_final_fitness_mean = 0.0;

    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

/// Linear-interpolation quantile (the "type 7" rule) of a sorted sample.
double quantile_sorted(std::span<const double> sorted, double q);

/// Aggregates outcomes in the order given. Labels come from scenario_id
/// (ids outside 1..6 are labelled "custom").
ScenarioReport make_report(int scenario_id, std::span<const RunOutcome> outcomes);

/// Runs replications with seeds seed0, seed0 + 1, ... and reports against
/// the DP optimum of `inst`. Throws ContractViolation if replications is 0
/// or exceeds the scenario seed stride.
std::pair<ScenarioReport, std::vector<ScenarioRun>> run_scenario(const Scenario& s,
                                                                 const KnapsackInstance& inst,
                                                                 const GaConfig& base,
                                                                 std::size_t replications,
                                                                 std::uint64_t seed0);

struct SuiteResult {
    std::vector<ScenarioReport> reports;
    std::vector<ScenarioRun> runs;
};

/// Runs the listed scenarios (all six by default), each in its own seed block.
SuiteResult run_all(const KnapsackInstance& inst, const GaConfig& base, std::size_t replications,
                    std::uint64_t seed0);
SuiteResult run_scenarios(std::span<const int> scenario_ids, const KnapsackInstance& inst,
                          const GaConfig& base, std::size_t replications, std::uint64_t seed0);

// ---- CSV ------------------------------------------------------------------

inline constexpr const char* kTraceHeader =
    "scenario_id,replication,seed,generation,best_fitness,mean_fitness,feasible_count";
inline constexpr const char* kReportHeader =
    "scenario_id,crossover,selection,replications,success_count,success_rate,"
    "first_hit_median,first_hit_q1,first_hit_q3,best_final_fitness_mean";

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A trace file that does not match the trace schema. row is 1-based and
/// counts the header; column is the offending column name when known.
class CsvSchemaError : public std::runtime_error {
public:
    CsvSchemaError(const std::string& what, std::size_t row, std::string column)
        : std::runtime_error(what), row_(row), column_(std::move(column))
    {
    }
    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::string column_;
};

/// Shortest round-trip-safe text for a real: 17 significant digits.
std::string format_real(double x);

std::string format_traces_csv(std::span<const ScenarioRun> runs);
std::string format_report_csv(std::span<const ScenarioReport> reports);

void write_traces_csv(std::span<const ScenarioRun> runs, const std::filesystem::path& path);
void write_report_csv(std::span<const ScenarioReport> reports, const std::filesystem::path& path);

struct TraceRow {
    int scenario_id = 0;
    std::size_t replication = 0;
    std::uint64_t seed = 0;
    std::size_t generation = 0;
    std::int64_t best_fitness = 0;
    double mean_fitness = 0.0;
    std::size_t feasible_count = 0;

    friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

std::vector<TraceRow> parse_traces_csv(std::string_view text);
std::vector<TraceRow> read_traces_csv(const std::filesystem::path& path);

/// Rebuilds one report per scenario id (ascending) from raw trace rows.
std::vector<ScenarioReport> summarize_traces(std::span<const TraceRow> rows, FitnessValue optimum);

// ---- random instances -----------------------------------------------------

/// Weights uniform in [1, max_weight], values uniform in [0, max_value],
/// capacity floor(capacity_ratio * total weight).
KnapsackInstance random_instance(std::size_t n, std::int64_t max_weight, std::int64_t max_value,
                                 double capacity_ratio, RandomSource& rng);

} // namespace knapga
