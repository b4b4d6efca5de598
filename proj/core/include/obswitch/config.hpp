#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "obswitch/problem.hpp"
#include "obswitch/verification.hpp"

namespace obswitch {

struct MonteCarloSettings {
    std::size_t n_paths = 100000;
    /// 0 means "align with the PDE time grid" (see aligned_steps).
    std::size_t n_steps = 0;
    std::uint64_t seed = 20140501;

    bool operator==(const MonteCarloSettings&) const = default;
};

/// Everything an experiment needs. spec.epsilon is unused; the noise levels
/// come from `epsilons`.
struct ExperimentConfig {
    ProblemSpec spec;
    Grid grid;
    std::vector<double> epsilons;
    std::vector<QueryPoint> query_points;
    MonteCarloSettings mc;
    std::string output_dir = "out";

    /// spec with the given noise level.
    ProblemSpec spec_for(double epsilon) const;

    /// Throws ConfigError (line 0) when an invariant is violated.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// {0, 2^-4, 2^-3, ..., 2^3}
std::vector<double> default_epsilons();
/// The six reference (t, m) pairs in mode 1.
std::vector<QueryPoint> default_query_points();

/// Flat `key = value` document; `#` starts a comment. Recognized keys:
/// epsilon_list, T, c01, c10, psi1_slope, psi1_intercept, x_min, x_max, n_x,
/// n_t, query_points, n_paths, n_steps, seed, output_dir. Lists are
/// comma-separated; a query point is `t:m:mode`. Omitted keys keep defaults.
/// Throws ConfigError naming the key and line.
ExperimentConfig parse_config(std::string_view text);

/// Inverse of parse_config (full precision, every key written).
std::string serialize_config(const ExperimentConfig& config);

/// Read and parse a file; throws ConfigError if it cannot be read.
ExperimentConfig load_config(const std::string& path);

}  // namespace obswitch
