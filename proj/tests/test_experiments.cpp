#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "knapga/experiments.hpp"

using namespace knapga;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::path(KNAPGA_TEST_TMP) / "experiments";
    fs::create_directories(dir);
    return dir / name;
}

std::size_t line_count(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::vector<RunOutcome> outcomes(std::initializer_list<std::optional<std::size_t>> hits,
                                 std::int64_t final_best)
{
    std::vector<RunOutcome> out;
    for (auto h : hits)
        out.push_back({h, {final_best}});
    return out;
}

} // namespace

TEST_CASE("scenario table")
{
    auto s = all_scenarios();
    REQUIRE(s.size() == 6);
    CHECK(s[0] == Scenario{1, CrossoverKind::OnePoint, SelectionMethod::rank()});
    CHECK(s[1] == Scenario{2, CrossoverKind::OnePoint, SelectionMethod::roulette()});
    CHECK(s[2] == Scenario{3, CrossoverKind::OnePoint, SelectionMethod::tournament(3)});
    CHECK(s[3] == Scenario{4, CrossoverKind::TwoPoint, SelectionMethod::rank()});
    CHECK(s[4] == Scenario{5, CrossoverKind::TwoPoint, SelectionMethod::roulette()});
    CHECK(s[5] == Scenario{6, CrossoverKind::TwoPoint, SelectionMethod::tournament(3)});
    CHECK_THROWS_AS(scenario(0), ContractViolation);
    CHECK_THROWS_AS(scenario(7), ContractViolation);

    GaConfig base;
    base.crossover.rate = 0.3;
    base.mutation.rate = 0.1;
    base.elitism = 2;
    auto cfg = scenario_config(scenario(5), base);
    CHECK(cfg.crossover == CrossoverMethod{CrossoverKind::TwoPoint, 0.3});
    CHECK(cfg.selection == SelectionMethod::roulette());
    CHECK(cfg.mutation.rate == 0.1);
    CHECK(cfg.elitism == 2);

    CHECK(scenario_seed_base(42, 1) == 42);
    CHECK(scenario_seed_base(42, 6) == 5'000'042);
}

TEST_CASE("quantiles interpolate linearly")
{
    std::vector<double> xs{1, 2, 3, 4};
    CHECK(quantile_sorted(xs, 0.0) == 1.0);
    CHECK(quantile_sorted(xs, 0.25) == 1.75);
    CHECK(quantile_sorted(xs, 0.5) == 2.5);
    CHECK(quantile_sorted(xs, 0.75) == 3.25);
    CHECK(quantile_sorted(xs, 1.0) == 4.0);
    std::vector<double> one{7};
    CHECK(quantile_sorted(one, 0.25) == 7.0);
    CHECK_THROWS_AS(quantile_sorted({}, 0.5), ContractViolation);
}

TEST_CASE("make_report aggregates")
{
    auto o = outcomes({3, std::nullopt, 9, 5, std::nullopt}, 50);
    o[1].final_best = {40};
    auto r = make_report(3, o);
    CHECK(r.crossover == "one-point");
    CHECK(r.selection == "tournament");
    CHECK(r.replications == 5);
    CHECK(r.success_count == 3);
    CHECK(r.success_rate == 0.6);
    CHECK(r.first_hit_median == 5.0);
    REQUIRE(r.first_hit_quartiles);
    CHECK(r.first_hit_quartiles->first == 4.0);
    CHECK(r.first_hit_quartiles->second == 7.0);
    CHECK(r.best_final_fitness_mean == 48.0);

    auto none = make_report(0, outcomes({std::nullopt, std::nullopt}, 10));
    CHECK(none.crossover == "custom");
    CHECK(none.success_count == 0);
    CHECK_FALSE(none.first_hit_median);
    CHECK_FALSE(none.first_hit_quartiles);
}

TEST_CASE("run_scenario")
{
    const auto& inst = paper_instance();
    GaConfig base;
    auto [report, runs] = run_scenario(scenario(2), inst, base, 20, 100);
    CHECK(runs.size() == 20);
    CHECK(report.replications == 20);
    for (std::size_t r = 0; r < runs.size(); ++r) {
        CHECK(runs[r].replication == r);
        CHECK(runs[r].scenario_id == 2);
        CHECK(runs[r].trace.config.seed == 100 + r);
        CHECK(runs[r].trace.config.selection == SelectionMethod::roulette());
    }
    CHECK(report.success_rate ==
          static_cast<double>(report.success_count) / static_cast<double>(report.replications));
    CHECK(report.first_hit_median.has_value() == (report.success_count > 0));

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto [single, unused] = run_scenario(scenario(3), inst, base, 1, seed);
        CHECK((single.success_rate == 0.0 || single.success_rate == 1.0));
        CHECK(single.first_hit_median.has_value() == (single.success_count == 1));
    }
    CHECK_THROWS_AS(run_scenario(scenario(1), inst, base, 0, 0), ContractViolation);
}

TEST_CASE("run_all counts, determinism and disjoint seed blocks")
{
    const auto& inst = paper_instance();
    GaConfig base;
    auto a = run_all(inst, base, 7, 9);
    auto b = run_all(inst, base, 7, 9);
    CHECK(a.runs.size() == 42);
    REQUIRE(a.reports.size() == 6);
    for (int i = 0; i < 6; ++i)
        CHECK(a.reports[i].scenario_id == i + 1);
    CHECK(a.reports == b.reports);
    CHECK(format_traces_csv(a.runs) == format_traces_csv(b.runs));

    // Scenario 4 alone with fewer replications reproduces the prefix of its block.
    const int only4[] = {4};
    auto sub = run_scenarios(only4, inst, base, 3, 9);
    REQUIRE(sub.runs.size() == 3);
    std::vector<ScenarioRun> full4;
    for (const auto& r : a.runs)
        if (r.scenario_id == 4)
            full4.push_back(r);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(sub.runs[i].trace == full4[i].trace);

    const int empty[] = {0};
    CHECK_THROWS_AS(run_scenarios(std::span<const int>(empty, 0), inst, base, 1, 0),
                    ContractViolation);
}

TEST_CASE("seed-42 suite: frozen regression values")
{
    // Measured once with the default configuration (200 replications, seed 42).
    auto suite = run_all(paper_instance(), GaConfig{}, 200, 42);
    const std::size_t successes[] = {2, 3, 3, 2, 1, 2};
    for (int i = 0; i < 6; ++i) {
        INFO("scenario " << i + 1);
        CHECK(suite.reports[i].success_count == successes[i]);
    }
    // Scenario 3 (one-point + tournament) beats scenario 5 (two-point + roulette).
    CHECK(suite.reports[2].success_rate > suite.reports[4].success_rate);
    for (const auto& run : suite.runs)
        for (const auto& s : run.trace.stats)
            REQUIRE(s.best_fitness.value <= 55);
}

TEST_CASE("trace and report CSV")
{
    const auto& inst = paper_instance();
    auto suite = run_all(inst, GaConfig{}, 4, 0);

    std::vector<ScenarioRun> one(suite.runs.begin(), suite.runs.begin() + 1);
    auto text = format_traces_csv(one);
    CHECK(line_count(text) == 51);
    CHECK(text.rfind(std::string(kTraceHeader) + "\n", 0) == 0);
    CHECK(format_traces_csv({}) == std::string(kTraceHeader) + "\n");

    auto report = format_report_csv(suite.reports);
    CHECK(line_count(report) == 7);
    CHECK(report.rfind(std::string(kReportHeader) + "\n", 0) == 0);
    CHECK(report.find(",\n") == std::string::npos);
    CHECK(report.find('\r') == std::string::npos);

    SUBCASE("write then parse preserves every field exactly")
    {
        auto path = scratch("traces.csv");
        write_traces_csv(suite.runs, path);
        auto rows = read_traces_csv(path);
        REQUIRE(rows.size() == suite.runs.size() * 50);
        std::size_t k = 0;
        for (const auto& run : suite.runs)
            for (const auto& s : run.trace.stats) {
                const auto& row = rows[k++];
                REQUIRE(row.scenario_id == run.scenario_id);
                REQUIRE(row.replication == run.replication);
                REQUIRE(row.seed == run.trace.config.seed);
                REQUIRE(row.generation == s.generation);
                REQUIRE(row.best_fitness == s.best_fitness.value);
                REQUIRE(row.mean_fitness == s.mean_fitness);
                REQUIRE(row.feasible_count == s.feasible_count);
            }
        // Reports rebuilt from the CSV equal the originals.
        CHECK(summarize_traces(rows, dp_optimal(inst).value) == suite.reports);
    }

    SUBCASE("awkward reals round-trip through 17 digits")
    {
        for (double x : {0.1, 1.0 / 3.0, 43.375, 1e-300, 123456789.123456789})
            CHECK(std::stod(format_real(x)) == x);
    }

    SUBCASE("write failures name the path")
    {
        auto bad = scratch("no_such_dir") / "x" / "report.csv";
        try {
            write_report_csv(suite.reports, bad);
            FAIL("expected IoError");
        } catch (const IoError& e) {
            CHECK(std::string(e.what()).find(bad.string()) != std::string::npos);
        }
    }
}

TEST_CASE("trace CSV schema errors")
{
    std::string header = std::string(kTraceHeader) + "\n";
    CHECK(parse_traces_csv(header).empty());
    CHECK(summarize_traces(parse_traces_csv(header), {55}).empty());

    try {
        parse_traces_csv(header + "1,0,42,0,abc,3.5,8\n");
        FAIL("expected schema error");
    } catch (const CsvSchemaError& e) {
        CHECK(e.row() == 2);
        CHECK(e.column() == "best_fitness");
    }
    try {
        parse_traces_csv(header + "1,0,42,0,5,3.5,8\n1,0,42,1,5,x,8\n");
        FAIL("expected schema error");
    } catch (const CsvSchemaError& e) {
        CHECK(e.row() == 3);
        CHECK(e.column() == "mean_fitness");
    }
    CHECK_THROWS_AS(parse_traces_csv("scenario_id,replication\n"), CsvSchemaError);
    CHECK_THROWS_AS(parse_traces_csv(header + "1,0,42\n"), CsvSchemaError);
    CHECK_THROWS_AS(parse_traces_csv(""), CsvSchemaError);
}

TEST_CASE("random_instance respects its parameters")
{
    RandomSource rng(31);
    for (int i = 0; i < 200; ++i) {
        auto inst = random_instance(10, 9, 4, 0.5, rng);
        CHECK(inst.size() == 10);
        for (auto w : inst.weights())
            CHECK((w >= 1 && w <= 9));
        for (auto v : inst.values())
            CHECK((v >= 0 && v <= 4));
        CHECK(inst.capacity() == inst.weight_sum() / 2);
    }
    CHECK_THROWS_AS(random_instance(0, 9, 4, 0.5, rng), ContractViolation);
}
