#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "obswitch/config.hpp"

namespace obswitch {

/// Command-line overrides applied on top of the config.
struct CommandOptions {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_x;
    std::optional<std::size_t> n_t;
    /// Surface CSV subsampling (every stride-th level and node).
    std::size_t stride = 1;
    /// verify: check these surface CSVs (one per config epsilon, in order)
    /// instead of solving.
    std::vector<std::string> surface_files;
};

/// Config with overrides applied and re-validated.
ExperimentConfig apply_overrides(ExperimentConfig config, const CommandOptions& options);

/// Each command writes its files atomically into the output directory and
/// returns a process exit code; `log` receives progress and summaries.
///
///  solve    surface_eps_<eps>.csv for the first epsilon
///  sweep    one surface per epsilon plus figure1.csv (epsilon,t,m,v1 at t in {0, 0.5})
///  simulate estimates.csv (epsilon,t0,m0,mode,mean,std_err,n_paths,seed)
///  verify   checks.csv and summary.txt; exit 1 iff any check failed
///  table2   table2.csv (t,m,epsilon,paper,computed,abs_diff,tolerance,pass); exit 1 iff any row fails
int cmd_solve(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_sweep(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_simulate(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_verify(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);
int cmd_table2(const ExperimentConfig& config, const CommandOptions& options, std::ostream& log);

/// File name used for a surface at noise level eps, e.g. surface_eps_0.0625.csv.
std::string surface_file_name(double epsilon);

/// Write `contents` to path via a temporary file and rename.
void write_file_atomically(const std::string& path, const std::string& contents);

}  // namespace obswitch
