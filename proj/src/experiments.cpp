#include "knapga/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace knapga {

namespace {

const char* const kTraceColumns[] = {"scenario_id",  "replication",  "seed",
                                     "generation",   "best_fitness", "mean_fitness",
                                     "feasible_count"};

std::vector<std::string_view> split(std::string_view line, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T parse_cell(std::string_view cell, std::size_t row, std::size_t col)
{
    T value{};
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw CsvSchemaError("row " + std::to_string(row) + ", column " + kTraceColumns[col] +
                                 ": cannot parse \"" + std::string(cell) + "\"",
                             row, kTraceColumns[col]);
    return value;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open for writing: " + path.string());
    out << content;
    out.flush();
    if (!out)
        throw IoError("write failed: " + path.string());
}

std::string optional_real(const std::optional<double>& x)
{
    return x ? format_real(*x) : std::string();
}

} // namespace

Scenario scenario(int id)
{
    if (id < 1 || id > 6)
        throw ContractViolation("scenario id must lie in 1..6, got " + std::to_string(id));
    const auto crossover = id <= 3 ? CrossoverKind::OnePoint : CrossoverKind::TwoPoint;
    SelectionMethod selection;
    switch ((id - 1) % 3) {
    case 0: selection = SelectionMethod::rank(); break;
    case 1: selection = SelectionMethod::roulette(); break;
    default: selection = SelectionMethod::tournament(3); break;
    }
    return {id, crossover, selection};
}

std::vector<Scenario> all_scenarios()
{
    std::vector<Scenario> out;
    for (int id = 1; id <= 6; ++id)
        out.push_back(scenario(id));
    return out;
}

GaConfig scenario_config(const Scenario& s, const GaConfig& base)
{
    GaConfig cfg = base;
    cfg.crossover.kind = s.crossover;
    cfg.selection = s.selection;
    return cfg;
}

std::uint64_t scenario_seed_base(std::uint64_t seed0, int scenario_id)
{
    return seed0 + static_cast<std::uint64_t>(scenario_id - 1) * kScenarioSeedStride;
}

double quantile_sorted(std::span<const double> sorted, double q)
{
    if (sorted.empty())
        throw ContractViolation("quantile of an empty sample");
    const double h = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

ScenarioReport make_report(int scenario_id, std::span<const RunOutcome> outcomes)
{
    ScenarioReport r;
    r.scenario_id = scenario_id;
    if (scenario_id >= 1 && scenario_id <= 6) {
        auto s = scenario(scenario_id);
        r.crossover = std::string(to_string(s.crossover));
        r.selection = std::string(to_string(s.selection.kind));
    } else {
        r.crossover = "custom";
        r.selection = "custom";
    }
    r.replications = outcomes.size();

    std::vector<double> hits;
    std::int64_t final_total = 0;
    for (const auto& o : outcomes) {
        if (o.first_hit)
            hits.push_back(static_cast<double>(*o.first_hit));
        final_total += o.final_best.value;
    }
    r.success_count = hits.size();
    if (r.replications > 0) {
        r.success_rate =
            static_cast<double>(r.success_count) / static_cast<double>(r.replications);
        r.best_final_fitness_mean =
            static_cast<double>(final_total) / static_cast<double>(r.replications);
    }
    if (!hits.empty()) {
        std::ranges::sort(hits);
        r.first_hit_median = quantile_sorted(hits, 0.5);
        r.first_hit_quartiles = {quantile_sorted(hits, 0.25), quantile_sorted(hits, 0.75)};
    }
    return r;
}

std::pair<ScenarioReport, std::vector<ScenarioRun>> run_scenario(const Scenario& s,
                                                                 const KnapsackInstance& inst,
                                                                 const GaConfig& base,
                                                                 std::size_t replications,
                                                                 std::uint64_t seed0)
{
    if (replications < 1 || replications > kScenarioSeedStride)
        throw ContractViolation("replications must lie in [1, 1000000]");
    const auto optimum = dp_optimal(inst).value;
    auto cfg = scenario_config(s, base);
    validate(cfg, inst);

    std::vector<ScenarioRun> runs;
    std::vector<RunOutcome> outcomes;
    runs.reserve(replications);
    outcomes.reserve(replications);
    for (std::size_t r = 0; r < replications; ++r) {
        cfg.seed = seed0 + r;
        auto trace = run_ga(inst, cfg, optimum);
        outcomes.push_back({trace.first_hit, trace.stats.back().best_fitness});
        runs.push_back({s.id, r, std::move(trace)});
    }
    return {make_report(s.id, outcomes), std::move(runs)};
}

SuiteResult run_scenarios(std::span<const int> scenario_ids, const KnapsackInstance& inst,
                          const GaConfig& base, std::size_t replications, std::uint64_t seed0)
{
    std::vector<int> ids(scenario_ids.begin(), scenario_ids.end());
    std::ranges::sort(ids);
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.empty())
        throw ContractViolation("no scenarios selected");

    SuiteResult out;
    for (int id : ids) {
        auto [report, runs] =
            run_scenario(scenario(id), inst, base, replications, scenario_seed_base(seed0, id));
        out.reports.push_back(std::move(report));
        std::ranges::move(runs, std::back_inserter(out.runs));
    }
    return out;
}

SuiteResult run_all(const KnapsackInstance& inst, const GaConfig& base, std::size_t replications,
                    std::uint64_t seed0)
{
    const int ids[] = {1, 2, 3, 4, 5, 6};
    return run_scenarios(ids, inst, base, replications, seed0);
}

std::string format_real(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_traces_csv(std::span<const ScenarioRun> runs)
{
    std::ostringstream out;
    out << kTraceHeader << '\n';
    for (const auto& run : runs)
        for (const auto& g : run.trace.stats)
            out << run.scenario_id << ',' << run.replication << ',' << run.trace.config.seed << ','
                << g.generation << ',' << g.best_fitness.value << ','
                << format_real(g.mean_fitness) << ',' << g.feasible_count << '\n';
    return out.str();
}

std::string format_report_csv(std::span<const ScenarioReport> reports)
{
    std::ostringstream out;
    out << kReportHeader << '\n';
    for (const auto& r : reports) {
        std::optional<double> q1, q3;
        if (r.first_hit_quartiles) {
            q1 = r.first_hit_quartiles->first;
            q3 = r.first_hit_quartiles->second;
        }
        out << r.scenario_id << ',' << r.crossover << ',' << r.selection << ',' << r.replications
            << ',' << r.success_count << ',' << format_real(r.success_rate) << ','
            << optional_real(r.first_hit_median) << ',' << optional_real(q1) << ','
            << optional_real(q3) << ',' << format_real(r.best_final_fitness_mean) << '\n';
    }
    return out.str();
}

void write_traces_csv(std::span<const ScenarioRun> runs, const std::filesystem::path& path)
{
    write_file(path, format_traces_csv(runs));
}

void write_report_csv(std::span<const ScenarioReport> reports, const std::filesystem::path& path)
{
    write_file(path, format_report_csv(reports));
}

std::vector<TraceRow> parse_traces_csv(std::string_view text)
{
    std::vector<std::string_view> lines = split(text, '\n');
    if (!lines.empty() && lines.back().empty())
        lines.pop_back();
    if (lines.empty())
        throw CsvSchemaError("row 1: missing header", 1, "");

    auto header = split(lines[0], ',');
    constexpr std::size_t ncol = std::size(kTraceColumns);
    for (std::size_t c = 0; c < ncol; ++c)
        if (c >= header.size() || header[c] != kTraceColumns[c])
            throw CsvSchemaError(std::string("row 1: expected column \"") + kTraceColumns[c] + "\"",
                                 1, kTraceColumns[c]);
    if (header.size() != ncol)
        throw CsvSchemaError("row 1: unexpected extra column \"" + std::string(header[ncol]) + "\"",
                             1, std::string(header[ncol]));

    std::vector<TraceRow> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::size_t row = i + 1;
        auto cells = split(lines[i], ',');
        if (cells.size() != ncol)
            throw CsvSchemaError("row " + std::to_string(row) + ": expected " +
                                     std::to_string(ncol) + " cells, found " +
                                     std::to_string(cells.size()),
                                 row, "");
        TraceRow r;
        r.scenario_id = parse_cell<int>(cells[0], row, 0);
        r.replication = parse_cell<std::size_t>(cells[1], row, 1);
        r.seed = parse_cell<std::uint64_t>(cells[2], row, 2);
        r.generation = parse_cell<std::size_t>(cells[3], row, 3);
        r.best_fitness = parse_cell<std::int64_t>(cells[4], row, 4);
        r.mean_fitness = parse_cell<double>(cells[5], row, 5);
        r.feasible_count = parse_cell<std::size_t>(cells[6], row, 6);
        rows.push_back(r);
    }
    return rows;
}

std::vector<TraceRow> read_traces_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open trace file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_traces_csv(buf.str());
    } catch (const CsvSchemaError& e) {
        throw CsvSchemaError(path.string() + ": " + e.what(), e.row(), e.column());
    }
}

std::vector<ScenarioReport> summarize_traces(std::span<const TraceRow> rows, FitnessValue optimum)
{
    // scenario -> replication -> rows
    std::map<int, std::map<std::size_t, std::vector<TraceRow>>> grouped;
    for (const auto& r : rows)
        grouped[r.scenario_id][r.replication].push_back(r);

    std::vector<ScenarioReport> reports;
    for (auto& [id, reps] : grouped) {
        std::vector<RunOutcome> outcomes;
        for (auto& [rep, gens] : reps) {
            std::ranges::stable_sort(gens, {}, &TraceRow::generation);
            RunOutcome o;
            for (const auto& g : gens)
                if (!o.first_hit && g.best_fitness == optimum.value)
                    o.first_hit = g.generation;
            o.final_best = {gens.back().best_fitness};
            outcomes.push_back(o);
        }
        reports.push_back(make_report(id, outcomes));
    }
    return reports;
}

KnapsackInstance random_instance(std::size_t n, std::int64_t max_weight, std::int64_t max_value,
                                 double capacity_ratio, RandomSource& rng)
{
    if (n < 1 || max_weight < 1 || max_value < 0 || !(capacity_ratio >= 0.0))
        throw ContractViolation("invalid random instance parameters");
    std::vector<std::int64_t> w(n), v(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = static_cast<std::int64_t>(rng.uniform_between(1, static_cast<std::uint64_t>(max_weight)));
        v[i] = static_cast<std::int64_t>(rng.uniform_between(0, static_cast<std::uint64_t>(max_value)));
        total += w[i];
    }
    auto capacity = static_cast<std::int64_t>(std::floor(capacity_ratio * static_cast<double>(total)));
    return KnapsackInstance(std::move(w), std::move(v), capacity);
}

} // namespace knapga
