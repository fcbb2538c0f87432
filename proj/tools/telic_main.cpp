#include <omp.h>

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "telic/errors.hpp"
#include "telic/io/commands.hpp"
#include "telic/version.hpp"

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string base;
    int threads = 0;
};

int run(const std::string& command, const GlobalOptions& opts) {
    if (opts.threads > 0) omp_set_num_threads(opts.threads);

    telic::io::ExperimentConfig config = telic::io::load_config_file(opts.config_path);
    telic::io::RunContext ctx = telic::io::make_context(
        std::move(config), opts.out_dir, opts.seed, opts.seed_set,
        opts.base.empty() ? nullptr : opts.base.c_str());

    const auto started = std::chrono::steady_clock::now();
    int code = 1;
    if (command == "simulate") code = telic::io::cmd_simulate(ctx);
    else if (command == "phase") code = telic::io::cmd_phase(ctx);
    else if (command == "reach") code = telic::io::cmd_reach(ctx);
    else if (command == "refine") code = telic::io::cmd_refine(ctx);
    else if (command == "curves") code = telic::io::cmd_curves(ctx);
    else if (command == "sanov") code = telic::io::cmd_sanov(ctx);
    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - started)
                               .count();
    telic::io::write_manifest(ctx, command, wall_ms);
    return code;
}

void add_common(CLI::App* cmd, GlobalOptions& opts) {
    cmd->add_option("--config", opts.config_path, "experiment config JSON")->required();
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--seed", opts.seed, "RNG seed (overrides the config)")
        ->each([&opts](const std::string&) { opts.seed_set = true; });
    cmd->add_option("--base", opts.base, "divergence unit for outputs")
        ->check(CLI::IsMember({"nats", "bits"}));
    cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = default)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"telic state representation toolkit"};
    app.set_version_flag("--version", telic::kVersion);
    app.require_subcommand(1);

    GlobalOptions opts;
    const char* commands[] = {"simulate", "phase", "reach", "refine", "curves", "sanov"};
    const char* descriptions[] = {
        "random-walk trajectory tiles (CSV + SVG)",
        "policy-space phase plots with state regions and budget contours",
        "reachability report for the configured goal (exit 2 when not controllable)",
        "goal refinement by state splitting (exit 2 when refinement fails)",
        "goal-complexity and granularity-complexity curves",
        "Monte Carlo Sanov rate validation (CSV)"};
    for (std::size_t i = 0; i < 6; ++i) {
        add_common(app.add_subcommand(commands[i], descriptions[i]), opts);
    }

    CLI11_PARSE(app, argc, argv);

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, opts);
    } catch (const telic::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const telic::TelicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
