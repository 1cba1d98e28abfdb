// Command-line front end: train / evaluate / tables / benchmark / check.
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 acceptance-threshold failure.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include "pinn/commands.hpp"
#include "pinn/csv.hpp"
#include "pinn/errors.hpp"
#include "pinn/version.hpp"

namespace {

struct CliArgs {
    std::string config_path;
    std::string problem;
    std::string profile;
    std::optional<std::uint64_t> seed;
    std::string out_dir;
    std::string checkpoint;
    int threads = -1;
    int repeats = 5;
    bool dump_samples = false;
};

pinn::RunConfig resolve_config(const CliArgs& args) {
    pinn::ConfigOverrides overrides;
    if (!args.problem.empty()) overrides.problem = pinn::problem_from_name(args.problem);
    if (!args.profile.empty()) overrides.profile = pinn::profile_from_name(args.profile);
    if (args.seed) overrides.seed = *args.seed;
    if (!args.out_dir.empty()) overrides.out_dir = args.out_dir;
    if (args.threads >= 0) overrides.threads = args.threads;
    if (!args.config_path.empty()) return pinn::load_config(args.config_path, overrides);
    return pinn::build_config(overrides);
}

std::filesystem::path resolve_checkpoint(const CliArgs& args, const pinn::RunConfig& config) {
    if (!args.checkpoint.empty()) return args.checkpoint;
    return std::filesystem::path(config.out_dir) / pinn::kCheckpointFile;
}

void add_common_flags(CLI::App* cmd, CliArgs& args) {
    cmd->add_option("--config", args.config_path, "Config file (INI, see docs/formats.md)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--problem", args.problem, "Problem name")
        ->check(CLI::IsMember({"nws", "allen-cahn"}));
    cmd->add_option("--seed", args.seed, "Seed for initialization and sampling");
    cmd->add_option("--profile", args.profile, "Defaults profile")
        ->check(CLI::IsMember({"paper", "ci"}));
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--threads", args.threads, "Training threads (0 = hardware)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Physics-informed neural network solver for the Newell-Whitehead-Segel "
                 "and Allen-Cahn equations"};
    app.set_version_flag("--version", pinn::kVersion);
    app.require_subcommand(1);

    CliArgs args;

    CLI::App* train = app.add_subcommand("train", "Train a network and write a checkpoint");
    add_common_flags(train, args);
    train->add_flag("--dump-samples", args.dump_samples, "Also write samples.csv");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Error grids and norms of a checkpoint");
    add_common_flags(evaluate, args);
    evaluate->add_option("--checkpoint", args.checkpoint, "Checkpoint path");

    CLI::App* tables = app.add_subcommand("tables", "Comparison tables against spline baselines");
    add_common_flags(tables, args);
    tables->add_option("--checkpoint", args.checkpoint, "Checkpoint path");

    CLI::App* benchmark = app.add_subcommand("benchmark", "Computation-time scaling benchmark");
    add_common_flags(benchmark, args);
    benchmark->add_option("--checkpoint", args.checkpoint, "Checkpoint path");
    benchmark->add_option("--repeats", args.repeats, "Timing repeats per count")
        ->check(CLI::PositiveNumber);

    CLI::App* check = app.add_subcommand("check", "Derivative and residual self-checks");
    (void)check;

    CLI11_PARSE(app, argc, argv);

    try {
        if (train->parsed()) {
            pinn::RunConfig config = resolve_config(args);
            auto out = pinn::cmd_train(config, args.dump_samples);
            std::cout << "trained " << pinn::problem_name(config.problem) << " for "
                      << config.training.iterations << " iterations in "
                      << pinn::format_g17(out.result.wall_seconds) << " s\n";
            std::cout << "checkpoint: " << out.checkpoint.string() << "\n";
            std::cout << "history:    " << out.history.string() << "\n";
            std::cout << "manifest:   " << out.manifest.string() << "\n";
            if (!out.result.history.empty())
                std::cout << "final total loss: "
                          << pinn::format_g17(out.result.history.back().loss.total) << "\n";
        } else if (evaluate->parsed()) {
            pinn::RunConfig config = resolve_config(args);
            auto out = pinn::cmd_evaluate(resolve_checkpoint(args, config), config);
            std::cout << out.summary << "\n";
            std::cout << "errors: " << out.errors_csv.string() << "\n";
            std::cout << "norms:  " << out.norms_csv.string() << "\n";
        } else if (tables->parsed()) {
            pinn::RunConfig config = resolve_config(args);
            auto table = pinn::cmd_tables(resolve_checkpoint(args, config), config);
            std::cout << pinn::format_table(table);
        } else if (benchmark->parsed()) {
            pinn::RunConfig config = resolve_config(args);
            auto record = pinn::cmd_benchmark(resolve_checkpoint(args, config), config,
                                              args.repeats);
            for (std::size_t i = 0; i < record.point_counts.size(); ++i)
                std::printf("%6ld points  %.6f s\n", record.point_counts[i], record.seconds[i]);
            std::printf("linear fit: seconds = %.3e * n + %.3e, r^2 = %.6f\n", record.fit.slope,
                        record.fit.intercept, record.fit.r_squared);
        } else if (check->parsed()) {
            auto report = pinn::cmd_check();
            for (const auto& line : report.lines) std::cout << line << "\n";
            if (!report.ok) return 3;
        }
    } catch (const pinn::NumericError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
