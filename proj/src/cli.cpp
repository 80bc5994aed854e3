#include "knapga/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "knapga/engine.hpp"
#include "knapga/experiments.hpp"
#include "knapga/knapsack.hpp"

namespace knapga {

namespace {

namespace fs = std::filesystem;

/// Flag values as parsed; unset flags leave the config untouched.
struct ConfigFlags {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> generations;
    std::optional<std::size_t> pop_size;
    std::optional<double> mutation_rate;
    std::optional<std::string> mutation_scope;
    std::optional<double> crossover_rate;
    std::optional<std::string> crossover;
    std::optional<std::string> selection;
    std::optional<std::size_t> tournament_size;
    std::optional<std::size_t> elitism;
    std::optional<std::string> config_path;
};

struct Options {
    std::optional<std::string> instance_path;
    std::string output_dir = "results";
    std::size_t replications = 200;
    std::vector<int> scenario_ids{1, 2, 3, 4, 5, 6};
    std::vector<std::string> trace_paths;
    ConfigFlags flags;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_common_ga_flags(CLI::App& cmd, ConfigFlags& f)
{
    cmd.add_option("--seed", f.seed, "Root random seed");
    cmd.add_option("--generations", f.generations, "Generations per run")->check(CLI::PositiveNumber);
    cmd.add_option("--pop-size", f.pop_size, "Population size (even, >= 2)");
    cmd.add_option("--mutation-rate", f.mutation_rate, "Mutation probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--mutation-scope", f.mutation_scope, "chromosome | gene")
        ->check(CLI::IsMember({"chromosome", "gene"}));
    cmd.add_option("--crossover-rate", f.crossover_rate, "Crossover probability")
        ->check(CLI::Range(0.0, 1.0));
    cmd.add_option("--elitism", f.elitism, "Members copied unchanged each generation");
    cmd.add_option("--config", f.config_path, "GaConfig JSON document")->check(CLI::ExistingFile);
}

void add_operator_flags(CLI::App& cmd, ConfigFlags& f)
{
    cmd.add_option("--crossover", f.crossover, "one-point | two-point")
        ->check(CLI::IsMember({"one-point", "two-point"}));
    cmd.add_option("--selection", f.selection, "rank | roulette | tournament")
        ->check(CLI::IsMember({"rank", "roulette", "tournament"}));
    cmd.add_option("--tournament-size", f.tournament_size, "Competitors per tournament")
        ->check(CLI::PositiveNumber);
}

GaConfig config_from_json(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config: " + path.string());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path.string() + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw UsageError(path.string() + ": config must be a JSON object");

    GaConfig cfg;
    try {
        for (auto& [key, val] : doc.items()) {
            if (key == "generations")
                cfg.generations = val.get<std::size_t>();
            else if (key == "population_size")
                cfg.population_size = val.get<std::size_t>();
            else if (key == "selection") {
                auto k = parse_selection_kind(val.get<std::string>());
                if (!k)
                    throw UsageError(path.string() + ": unknown selection \"" +
                                     val.get<std::string>() + "\"");
                cfg.selection.kind = *k;
            } else if (key == "tournament_size")
                cfg.selection.tournament_size = val.get<std::size_t>();
            else if (key == "crossover") {
                auto k = parse_crossover_kind(val.get<std::string>());
                if (!k)
                    throw UsageError(path.string() + ": unknown crossover \"" +
                                     val.get<std::string>() + "\"");
                cfg.crossover.kind = *k;
            } else if (key == "crossover_rate")
                cfg.crossover.rate = val.get<double>();
            else if (key == "mutation_rate")
                cfg.mutation.rate = val.get<double>();
            else if (key == "mutation_scope") {
                auto s = parse_mutation_scope(val.get<std::string>());
                if (!s)
                    throw UsageError(path.string() + ": unknown mutation_scope \"" +
                                     val.get<std::string>() + "\"");
                cfg.mutation.scope = *s;
            } else if (key == "elitism")
                cfg.elitism = val.get<std::size_t>();
            else if (key == "seed")
                cfg.seed = val.get<std::uint64_t>();
            else
                throw UsageError(path.string() + ": unknown config field \"" + key + "\"");
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(path.string() + ": bad field type: " + e.what());
    }
    return cfg;
}

GaConfig resolve_config(const ConfigFlags& f)
{
    GaConfig cfg = f.config_path ? config_from_json(*f.config_path) : GaConfig{};
    if (f.seed) cfg.seed = *f.seed;
    if (f.generations) cfg.generations = *f.generations;
    if (f.pop_size) cfg.population_size = *f.pop_size;
    if (f.mutation_rate) cfg.mutation.rate = *f.mutation_rate;
    if (f.mutation_scope) cfg.mutation.scope = *parse_mutation_scope(*f.mutation_scope);
    if (f.crossover_rate) cfg.crossover.rate = *f.crossover_rate;
    if (f.crossover) cfg.crossover.kind = *parse_crossover_kind(*f.crossover);
    if (f.selection) cfg.selection.kind = *parse_selection_kind(*f.selection);
    if (f.tournament_size) cfg.selection.tournament_size = *f.tournament_size;
    if (f.elitism) cfg.elitism = *f.elitism;
    return cfg;
}

KnapsackInstance resolve_instance(const Options& opt)
{
    return opt.instance_path ? load_instance(*opt.instance_path) : paper_instance();
}

fs::path prepare_output_dir(const std::string& dir)
{
    fs::path p(dir);
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec || !fs::is_directory(p))
        throw IoError("cannot create output directory: " + dir);
    return p;
}

int cmd_oracle(const Options& opt, std::ostream& out)
{
    auto inst = resolve_instance(opt);
    auto sol = dp_optimal(inst);
    std::ostringstream witness;
    for (std::size_t i = 0; i < sol.witness.size(); ++i)
        if (sol.witness[i])
            witness << (witness.tellp() > 0 ? " " : "") << i;
    out << "optimum: " << sol.value.value << '\n'
        << "witness: " << witness.str() << '\n'
        << "witness_weight: " << total_weight(sol.witness, inst) << '\n';
    return 0;
}

int cmd_run(const Options& opt, std::ostream& out)
{
    auto inst = resolve_instance(opt);
    auto cfg = resolve_config(opt.flags);
    try {
        validate(cfg, inst);
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
    auto dir = prepare_output_dir(opt.output_dir);

    auto optimum = dp_optimal(inst).value;
    std::vector<ScenarioRun> runs{{0, 0, run_ga(inst, cfg, optimum)}};
    const auto& trace = runs.front().trace;
    auto path = dir / "trace.csv";
    write_traces_csv(runs, path);

    if (trace.first_hit)
        out << "first_hit: generation " << *trace.first_hit << " (optimum " << optimum.value
            << ")\n";
    else
        out << "no convergence: best " << trace.stats.back().best_fitness.value << " of optimum "
            << optimum.value << '\n';
    out << "wrote " << path.string() << '\n';
    return 0;
}

void print_report_table(const std::vector<ScenarioReport>& reports, std::ostream& out)
{
    auto opt = [](const std::optional<double>& x) {
        if (!x)
            return std::string("-");
        std::ostringstream s;
        s << std::fixed << std::setprecision(1) << *x;
        return s.str();
    };
    out << std::left << std::setw(4) << "id" << std::setw(11) << "crossover" << std::setw(12)
        << "selection" << std::right << std::setw(6) << "reps" << std::setw(9) << "success"
        << std::setw(8) << "rate" << std::setw(8) << "median" << std::setw(7) << "q1"
        << std::setw(7) << "q3" << std::setw(12) << "final_mean" << '\n';
    for (const auto& r : reports) {
        std::optional<double> q1, q3;
        if (r.first_hit_quartiles) {
            q1 = r.first_hit_quartiles->first;
            q3 = r.first_hit_quartiles->second;
        }
        out << std::left << std::setw(4) << r.scenario_id << std::setw(11) << r.crossover
            << std::setw(12) << r.selection << std::right << std::setw(6) << r.replications
            << std::setw(9) << r.success_count << std::setw(8) << std::fixed
            << std::setprecision(3) << r.success_rate << std::setw(8) << opt(r.first_hit_median)
            << std::setw(7) << opt(q1) << std::setw(7) << opt(q3) << std::setw(12)
            << std::setprecision(3) << r.best_final_fitness_mean << '\n';
    }
    out.unsetf(std::ios::floatfield);
}

int cmd_scenarios(const Options& opt, std::ostream& out)
{
    if (opt.scenario_ids.empty())
        throw UsageError("--scenarios needs at least one id in 1..6");
    if (opt.replications < 1 || opt.replications > kScenarioSeedStride)
        throw UsageError("--replications must lie in [1, 1000000]");
    auto inst = resolve_instance(opt);
    auto base = resolve_config(opt.flags);
    try {
        for (int id : opt.scenario_ids)
            validate(scenario_config(scenario(id), base), inst);
    } catch (const ContractViolation& e) {
        throw UsageError(e.what());
    }
    auto dir = prepare_output_dir(opt.output_dir);

    auto suite = run_scenarios(opt.scenario_ids, inst, base, opt.replications, base.seed);
    std::vector<fs::path> written;
    for (const auto& report : suite.reports) {
        std::vector<ScenarioRun> runs;
        for (const auto& r : suite.runs)
            if (r.scenario_id == report.scenario_id)
                runs.push_back(r);
        auto path = dir / ("traces_scenario_" + std::to_string(report.scenario_id) + ".csv");
        write_traces_csv(runs, path);
        written.push_back(path);
    }
    auto report_path = dir / "report.csv";
    write_report_csv(suite.reports, report_path);
    written.push_back(report_path);

    out << "optimum " << dp_optimal(inst).value.value << ", seed " << base.seed
        << ", scenario seed block = seed + (id - 1) * " << kScenarioSeedStride
        << " + replication\n";
    print_report_table(suite.reports, out);
    for (const auto& p : written)
        out << "wrote " << p.string() << '\n';
    return 0;
}

int cmd_summarize(const Options& opt, std::ostream& out)
{
    auto inst = resolve_instance(opt);
    std::vector<TraceRow> rows;
    for (const auto& p : opt.trace_paths) {
        auto part = read_traces_csv(p);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    auto reports = summarize_traces(rows, dp_optimal(inst).value);
    auto dir = prepare_output_dir(opt.output_dir);
    auto path = dir / "summary_report.csv";
    write_report_csv(reports, path);
    print_report_table(reports, out);
    out << "wrote " << path.string() << '\n';
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Genetic-algorithm experiments on the 0/1 knapsack problem", "knapsack-ga"};
    app.require_subcommand(1);
    Options opt;

    auto* oracle = app.add_subcommand("oracle", "Print the exact optimum and a witness");
    auto* run = app.add_subcommand("run", "One seeded GA run, trace written as CSV");
    auto* scen = app.add_subcommand("scenarios", "Replicated runs of the six operator scenarios");
    auto* summ = app.add_subcommand("summarize", "Recompute scenario reports from trace CSVs");

    for (auto* cmd : {oracle, run, scen, summ})
        cmd->add_option("--instance", opt.instance_path, "Instance JSON (default: built-in)");
    for (auto* cmd : {run, scen, summ})
        cmd->add_option("--output", opt.output_dir, "Output directory")->capture_default_str();

    add_common_ga_flags(*run, opt.flags);
    add_operator_flags(*run, opt.flags);
    add_common_ga_flags(*scen, opt.flags);
    scen->add_option("--replications", opt.replications, "Runs per scenario")
        ->capture_default_str();
    scen->add_option("--scenarios", opt.scenario_ids, "Comma-separated scenario ids")
        ->delimiter(',')
        ->check(CLI::Range(1, 6));
    summ->add_option("traces", opt.trace_paths, "Trace CSV files")->required();

    std::vector<const char*> argv{"knapsack-ga"};
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*oracle) return cmd_oracle(opt, out);
        if (*run) return cmd_run(opt, out);
        if (*scen) return cmd_scenarios(opt, out);
        return cmd_summarize(opt, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const CsvSchemaError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace knapga
