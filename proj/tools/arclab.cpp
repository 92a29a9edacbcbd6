#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "arclab/runner.hpp"
#include "arclab/version.hpp"

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a planar attraction-repulsion chemotaxis system"};
    app.set_version_flag("--version", std::string(arclab::kToolName) + " " + arclab::kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    arclab::CliOverrides overrides;
    std::string out_dir;
    uint64_t seed = 0;

    const char* names[] = {"geometry", "bound", "simulate", "bench", "estimate-ctilde", "verify"};
    const char* blurbs[] = {
        "compute the star-shape constants of the configured domain",
        "compute the blow-up-time lower bounds and their constants",
        "advance the cell-density equation and export the trajectory",
        "verify the functional inequalities on sampled trial functions",
        "estimate the elliptic interpolation constant empirically",
        "simulate, then check mass, the energy inequality, and bound consistency",
    };
    for (int k = 0; k < 6; ++k) {
        CLI::App* sub = app.add_subcommand(names[k], blurbs[k]);
        sub->add_option("--config", config_path, "experiment configuration (JSON)")
            ->required();
        sub->add_option("--out", out_dir, "output directory (overrides outputs.dir)");
        sub->add_option("--seed", seed, "seed override for ctilde estimation and bench");
    }

    CLI11_PARSE(app, argc, argv);

    const CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--out") > 0) overrides.out_dir = out_dir;
    if (sub->count("--seed") > 0) overrides.seed = seed;

    return arclab::run_command(sub->get_name(), config_path, overrides, std::cout, std::cerr);
}
