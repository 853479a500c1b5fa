// Command-line driver for scenario runs.
//
//   transgress run <config> [--out PATH] [--resolution N] [--tol-scale X] [--seed N]
//   transgress list
//   transgress oracle <config> --out PATH
//
// <config> is a TOML file or the name of a built-in scenario. Exit codes:
// 0 all checks passed, 1 a check failed, 2 configuration error.

#include "transgress/errors.hpp"
#include "transgress/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scenario runner for transgressed forms and characters"};
    app.require_subcommand(1);

    std::string config, out;
    std::optional<int> resolution;
    double tol_scale = 1.0;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> only;

    CLI::App* run = app.add_subcommand("run", "run a scenario and write its report");
    run->add_option("config", config, "scenario TOML file or built-in name")->required();
    run->add_option("--out", out, "report path (JSON; CSV tables are written next to it)");
    run->add_option("--resolution", resolution, "override every resolution list with N")->check(CLI::PositiveNumber);
    run->add_option("--tol-scale", tol_scale, "multiply every tolerance")->check(CLI::PositiveNumber);
    run->add_option("--seed", seed, "override the scenario seed");
    run->add_option("--check", only, "run only the named checks");

    CLI::App* list = app.add_subcommand("list", "list the built-in scenarios");

    std::string oracle_out;
    CLI::App* oracle = app.add_subcommand("oracle", "write golden values of oracle checks");
    oracle->add_option("config", config, "scenario TOML file or built-in name")->required();
    oracle->add_option("--out", oracle_out, "golden file path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_config;
    }

    try {
        if (*list) {
            for (const std::string& name : transgress::builtin_scenario_names()) {
                const transgress::Scenario s = transgress::resolve_scenario(name);
                std::cout << name << "  " << s.description << '\n';
            }
            return exit_pass;
        }
        const transgress::Scenario scenario = transgress::resolve_scenario(config);
        if (*oracle) {
            const std::string text = transgress::run_oracle(scenario);
            const std::filesystem::path p(oracle_out);
            if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
            std::ofstream f(p, std::ios::binary);
            if (!f) throw transgress::ConfigError("cannot write " + oracle_out);
            f << text;
            return exit_pass;
        }
        transgress::RunOptions opts;
        opts.resolution = resolution;
        opts.tol_scale = tol_scale;
        opts.seed = seed;
        opts.only = only;
        const transgress::Report report = transgress::run_scenario(scenario, opts);
        if (out.empty())
            std::cout << transgress::report_json(report);
        else
            transgress::write_report(report, out);
        for (const transgress::CheckRecord& r : report.records)
            std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "  defect=" << r.defect << " tol=" << r.tolerance
                      << (r.error.empty() ? "" : "  error: " + r.error) << '\n';
        return report.all_passed() ? exit_pass : exit_fail;
    } catch (const transgress::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        std::cerr << e.what() << '\n';
        return exit_fail;
    }
}
