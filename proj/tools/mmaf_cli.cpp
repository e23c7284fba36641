#include <iostream>

#include <CLI11.hpp>

#include "mmaf/pipeline.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Spatio-temporal OU simulation, embedding, PAC-Bayes bounds and ensemble forecasts"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    app.add_option("--config", config, "JSON pipeline config")->required();
    auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    auto* seed_opt = app.add_option("--seed", seed, "rng seed (overrides rng_seed)");
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    const std::pair<const char*, const char*> commands[] = {
        {"simulate", "simulate a cube and write cube.csv / cube.json"},
        {"estimate", "estimate A, c, lambda and Var from the input cube"},
        {"select", "choose a_t and m"},
        {"embed", "write the training set of one pixel"},
        {"bound", "evaluate a PAC-Bayes bound"},
        {"forecast", "per-pixel 50-member ensemble forecast with CSV and SVG output"},
        {"validate", "Monte Carlo check of the exponential inequality"},
    };
    for (const auto& [name, help] : commands)
        app.add_subcommand(name, help)->fallthrough();

    CLI11_PARSE(app, argc, argv);

    mmaf::RunOptions opts;
    opts.subcommand = app.get_subcommands().front()->get_name();
    opts.config_path = config;
    if (*out_opt)
        opts.out_dir = out_dir;
    if (*seed_opt)
        opts.seed = seed;
    opts.threads = threads;
    return mmaf::run(opts, std::cout);
}
