#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "knapga/cli.hpp"
#include "knapga/experiments.hpp"

using namespace knapga;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name)
{
    auto dir = fs::path(KNAPGA_TEST_TMP) / "cli" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::size_t lines(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

} // namespace

TEST_CASE("oracle")
{
    auto r = cli({"oracle"});
    CHECK(r.code == 0);
    CHECK(r.out.find("optimum: 55\n") != std::string::npos);
    CHECK(r.out.find("witness: 0 1 2 3 7 8 11 16\n") != std::string::npos);

    auto same = cli({"oracle", "--instance", KNAPGA_PAPER_INSTANCE});
    CHECK(same.code == 0);
    CHECK(same.out == r.out);

    auto dir = fresh_dir("oracle");
    spit(dir / "empty_bag.json", R"({"weights":[1,2,3],"values":[4,5,6],"capacity":0})");
    auto zero = cli({"oracle", "--instance", (dir / "empty_bag.json").string()});
    CHECK(zero.code == 0);
    CHECK(zero.out.find("optimum: 0\nwitness: \n") != std::string::npos);

    auto missing = cli({"oracle", "--instance", (dir / "nope.json").string()});
    CHECK(missing.code != 0);
    CHECK(missing.out.empty());
    CHECK(missing.err.find("nope.json") != std::string::npos);

    spit(dir / "mismatch.json", R"({"weights":[1,2,3],"values":[4,5],"capacity":3})");
    auto bad = cli({"oracle", "--instance", (dir / "mismatch.json").string()});
    CHECK(bad.code != 0);
    CHECK(bad.out.empty());
}

TEST_CASE("run")
{
    auto dir = fresh_dir("run");
    auto r = cli({"run", "--output", dir.string(), "--seed", "5"});
    REQUIRE(r.code == 0);
    auto trace = slurp(dir / "trace.csv");
    CHECK(lines(trace) == 51);
    CHECK(r.out.find((dir / "trace.csv").string()) != std::string::npos);
    const bool summary = r.out.find("first_hit: generation") != std::string::npos ||
                         r.out.find("no convergence") != std::string::npos;
    CHECK(summary);

    auto rows = read_traces_csv(dir / "trace.csv");
    CHECK(rows.front().seed == 5);
    CHECK(rows.front().scenario_id == 0);

    auto again = cli({"run", "--output", dir.string(), "--seed", "5"});
    CHECK(again.code == 0);
    CHECK(slurp(dir / "trace.csv") == trace);

    CHECK(cli({"run", "--output", dir.string(), "--generations", "1"}).code == 0);
    CHECK(lines(slurp(dir / "trace.csv")) == 2);

    auto gene = cli({"run", "--output", dir.string(), "--mutation-scope", "gene", "--selection",
                     "roulette", "--crossover", "two-point", "--elitism", "2"});
    CHECK(gene.code == 0);
}

TEST_CASE("run rejects bad flags before doing any work")
{
    auto dir = fresh_dir("run_bad");
    auto out = (dir / "out").string();
    for (auto args : std::vector<std::vector<std::string>>{
             {"run", "--output", out, "--pop-size", "7"},
             {"run", "--output", out, "--pop-size", "0"},
             {"run", "--output", out, "--mutation-rate", "1.5"},
             {"run", "--output", out, "--crossover-rate", "-0.1"},
             {"run", "--output", out, "--selection", "boltzmann"},
             {"run", "--output", out, "--tournament-size", "9"},
             {"run", "--output", out, "--elitism", "8"},
             {"run", "--output", out, "--generations", "0"},
             {"run", "--output", out, "--frobnicate"},
             {"run", "--output", out, "--seed", "-3"},
             {"bogus"},
             {}}) {
        auto r = cli(args);
        INFO(r.err);
        CHECK(r.code != 0);
    }
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("run --config with flag overrides")
{
    auto dir = fresh_dir("config");
    spit(dir / "cfg.json",
         R"({"generations": 10, "population_size": 6, "selection": "rank",
             "crossover": "two-point", "crossover_rate": 0.5, "mutation_rate": 0.2,
             "mutation_scope": "gene", "elitism": 1, "seed": 77, "tournament_size": 2})");
    auto r = cli({"run", "--config", (dir / "cfg.json").string(), "--output", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(dir / "trace.csv")) == 11);
    CHECK(read_traces_csv(dir / "trace.csv").front().seed == 77);

    auto o = cli({"run", "--config", (dir / "cfg.json").string(), "--generations", "4",
                  "--output", dir.string()});
    REQUIRE(o.code == 0);
    CHECK(lines(slurp(dir / "trace.csv")) == 5);

    spit(dir / "unknown.json", R"({"generations": 10, "colour": "blue"})");
    CHECK(cli({"run", "--config", (dir / "unknown.json").string(), "--output", dir.string()})
              .code != 0);
    spit(dir / "odd.json", R"({"population_size": 5})");
    CHECK(cli({"run", "--config", (dir / "odd.json").string(), "--output", dir.string()}).code !=
          0);
}

TEST_CASE("scenarios and summarize")
{
    auto dir = fresh_dir("scenarios");
    auto r = cli({"scenarios", "--scenarios", "3", "--replications", "1", "--seed", "11",
                  "--output", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "traces_scenario_3.csv"));
    CHECK_FALSE(fs::exists(dir / "traces_scenario_1.csv"));
    CHECK(lines(slurp(dir / "report.csv")) == 2);
    CHECK(lines(slurp(dir / "traces_scenario_3.csv")) == 51);
    CHECK(r.out.find("tournament") != std::string::npos);
    CHECK(r.out.find((dir / "report.csv").string()) != std::string::npos);

    auto full = fresh_dir("scenarios_full");
    auto a = cli({"scenarios", "--replications", "5", "--seed", "3", "--output", full.string()});
    REQUIRE(a.code == 0);
    const auto report = slurp(full / "report.csv");
    CHECK(lines(report) == 7);

    std::vector<std::string> args{"summarize", "--output", full.string()};
    for (int id = 1; id <= 6; ++id)
        args.push_back((full / ("traces_scenario_" + std::to_string(id) + ".csv")).string());
    const auto trace1 = slurp(full / "traces_scenario_1.csv");
    auto s = cli(args);
    REQUIRE(s.code == 0);
    CHECK(slurp(full / "summary_report.csv") == report);
    CHECK(slurp(full / "traces_scenario_1.csv") == trace1);
    CHECK(s.out.find("summary_report.csv") != std::string::npos);

    CHECK(cli({"scenarios", "--scenarios", "7", "--output", dir.string()}).code != 0);
    CHECK(cli({"scenarios", "--scenarios", "0,3", "--output", dir.string()}).code != 0);
    CHECK(cli({"scenarios", "--scenarios", "", "--output", dir.string()}).code != 0);
    CHECK(cli({"scenarios", "--replications", "0", "--output", dir.string()}).code != 0);
    CHECK(cli({"scenarios", "--selection", "rank", "--output", dir.string()}).code != 0);
}

TEST_CASE("summarize edge cases")
{
    auto dir = fresh_dir("summarize");
    spit(dir / "empty.csv", std::string(kTraceHeader) + "\n");
    auto e = cli({"summarize", "--output", dir.string(), (dir / "empty.csv").string()});
    CHECK(e.code == 0);
    CHECK(slurp(dir / "summary_report.csv") == std::string(kReportHeader) + "\n");

    spit(dir / "bad.csv", std::string(kTraceHeader) + "\n1,0,42,0,12,6.5,8\n1,0,42,1,oops,6.5,8\n");
    auto b = cli({"summarize", "--output", dir.string(), (dir / "bad.csv").string()});
    CHECK(b.code != 0);
    CHECK(b.err.find("row 3") != std::string::npos);
    CHECK(b.err.find("best_fitness") != std::string::npos);

    CHECK(cli({"summarize", "--output", dir.string()}).code != 0);
    CHECK(cli({"summarize", "--output", dir.string(), (dir / "absent.csv").string()}).code != 0);
}
