#include <cstdint>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rig/cli.hpp"

namespace {

void add_common_flags(CLI::App* cmd, rig::CommandOptions& opt)
{
    cmd->add_option("--config", opt.config, "flat key-value config document");
    cmd->add_option("--out", opt.out, "output directory");
    cmd->add_option("--seed", opt.seed, "noise seed override");
    cmd->add_option("--sigma", opt.sigma, "noise sigma_n override");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"test-rig simulation and parameter estimation"};
    app.require_subcommand(1);

    rig::CommandOptions opt;
    std::function<void()> run;

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the rig model, write trajectory.csv");
    add_common_flags(simulate, opt);
    simulate->callback([&] { run = [&] { rig::cmd_simulate(opt, std::cout); }; });

    CLI::App* generate = app.add_subcommand("generate", "write a noisy synthetic measurements.csv");
    add_common_flags(generate, opt);
    generate->callback([&] { run = [&] { rig::cmd_generate(opt, std::cout); }; });

    CLI::App* verify2 = app.add_subcommand("verify2", "two-parameter (cm, ke) estimation sweep over noise levels");
    add_common_flags(verify2, opt);
    verify2->callback([&] { run = [&] { rig::cmd_verify2(opt, std::cout); }; });

    CLI::App* estimate9 = app.add_subcommand("estimate9", "nine-parameter pairwise estimation heuristic");
    add_common_flags(estimate9, opt);
    estimate9->add_option("--data", opt.data, "measurement CSV to fit");
    estimate9->add_option("--synthetic-truth", opt.synthetic_truth,
                          "parameter file generating synthetic data to fit");
    estimate9->callback([&] { run = [&] { rig::cmd_estimate9(opt, std::cout); }; });

    CLI::App* defaults = app.add_subcommand("defaults", "print the built-in config defaults");
    defaults->callback([&] { run = [] { rig::cmd_defaults(std::cout); }; });

    CLI11_PARSE(app, argc, argv);

    try {
        run();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
