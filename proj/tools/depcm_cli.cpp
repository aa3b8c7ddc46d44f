#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "depcm/experiment.hpp"

namespace ex = depcm::experiment;

int main(int argc, char** argv) {
    CLI::App app{"Differential evolution parameter control experiments"};
    app.require_subcommand(1);

    std::string spec_file;
    std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
    std::optional<std::string> output;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> runs;
    std::optional<std::int64_t> budget_multiplier;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_file, "experiment spec file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--jobs,-j", jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--out,-o", output, "output directory (overrides the spec)");
        cmd->add_option("--seed", seed, "master seed (overrides the spec)");
        cmd->add_option("--runs", runs, "runs per config group (overrides the spec)");
        cmd->add_option("--budget-multiplier", budget_multiplier, "budget per dimension (overrides the spec)");
    };

    auto* run = app.add_subcommand("run", "execute an experiment spec");
    add_run_flags(run);
    auto* gaode = app.add_subcommand("gaode", "execute a spec with the greedy approximate oracle");
    add_run_flags(gaode);

    auto* analyze = app.add_subcommand("analyze", "emit ECDF or APS tables from run records");
    std::string dir;
    std::string mode = "ecdf";
    std::optional<std::string> analysis_out;
    analyze->add_option("dir", dir, "directory holding runs.jsonl files")->required();
    analyze->add_option("--mode,-m", mode, "ecdf or aps")->check(CLI::IsMember({"ecdf", "aps"}));
    analyze->add_option("--out,-o", analysis_out, "output directory (default: <dir>/analysis)");

    auto* list = app.add_subcommand("list", "print the method registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ex::exit_config_error;
    }

    const ex::Overrides overrides{output, seed, runs, budget_multiplier};
    if (*run) return ex::cmd_run(spec_file, overrides, jobs, std::cout, std::cerr);
    if (*gaode) return ex::cmd_gaode(spec_file, overrides, jobs, std::cout, std::cerr);
    if (*analyze) {
        std::optional<std::filesystem::path> out_dir;
        if (analysis_out) out_dir = *analysis_out;
        return ex::cmd_analyze(dir, mode, out_dir, std::cout, std::cerr);
    }
    if (*list) return ex::cmd_list(std::cout);
    return ex::exit_config_error;
}
