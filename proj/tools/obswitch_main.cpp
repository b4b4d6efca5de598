// obswitch: solve, sweep, simulate and verify the two-mode switching problem
// under noisy observation of a Brownian signal.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "obswitch/commands.hpp"
#include "obswitch/config.hpp"
#include "obswitch/error.hpp"

namespace {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kConfigError = 2,
    kNumericError = 3,
    kRuntimeError = 4,
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Optimal switching under incomplete information: PDE solver, Monte Carlo "
                 "policy evaluation and structural checks"};
    app.require_subcommand(1);

    std::string config_path;
    obswitch::CommandOptions options;
    std::string out_dir;
    std::uint64_t seed = 0;
    std::size_t nx = 0, nt = 0;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "flat key = value config file (defaults if omitted)")
            ->check(CLI::ExistingFile);
        cmd->add_option("--out", out_dir, "output directory (overrides output_dir)");
        cmd->add_option("--seed", seed, "Monte Carlo seed (overrides seed)");
        cmd->add_option("--nx", nx, "spatial node count (overrides n_x)")->check(CLI::PositiveNumber);
        cmd->add_option("--nt", nt, "time step count (overrides n_t)")->check(CLI::PositiveNumber);
        cmd->add_option("--stride", options.stride, "write every stride-th level/node of surface CSVs")
            ->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "solve for the first configured epsilon");
    auto* sweep = app.add_subcommand("sweep", "solve every epsilon and write figure1.csv");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo value of the optimal regions");
    auto* verify = app.add_subcommand("verify", "run the structural checks; exit 1 on failure");
    auto* table2 = app.add_subcommand("table2", "compare against the reference value table");
    for (auto* cmd : {solve, sweep, simulate, verify, table2}) add_common(cmd);
    verify->add_option("--surfaces", options.surface_files,
                       "surface CSVs to check instead of solving (one per epsilon, in order)")
        ->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        auto config = config_path.empty() ? obswitch::parse_config("")
                                          : obswitch::load_config(config_path);
        if (!out_dir.empty()) options.out_dir = out_dir;
        if (app.get_subcommands().front()->count("--seed") > 0) options.seed = seed;
        if (nx > 0) options.n_x = nx;
        if (nt > 0) options.n_t = nt;

        if (solve->parsed()) return obswitch::cmd_solve(config, options, std::cout);
        if (sweep->parsed()) return obswitch::cmd_sweep(config, options, std::cout);
        if (simulate->parsed()) return obswitch::cmd_simulate(config, options, std::cout);
        if (verify->parsed()) return obswitch::cmd_verify(config, options, std::cout);
        if (table2->parsed()) return obswitch::cmd_table2(config, options, std::cout);
    } catch (const obswitch::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return kConfigError;
    } catch (const obswitch::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kOk;
}
