#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "obswitch/filtering.hpp"
#include "obswitch/problem.hpp"
#include "obswitch/vi_solver.hpp"

namespace obswitch {

/// Outcome of running a policy along one path.
struct StrategyExecution {
    std::vector<double> switch_times;
    std::vector<Mode> modes;  // modes[0] is the initial mode; modes[k+1] follows switch k
    double realized_payoff = 0.0;
    double total_cost = 0.0;
    std::size_t opens = 0;
    std::size_t closes = 0;
    std::size_t clamped_lookups = 0;  // states outside the region grid
};

struct MCEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t n_paths = 0;
};

/// Step-by-step policy executor. At each observed state the policy is asked
/// whether to leave the current mode; payoff accrues by the trapezoid rule
/// while open. Running it on a prefix of a path reproduces the decisions made
/// on that prefix.
class PolicyRunner {
public:
    PolicyRunner(const ProblemSpec& spec, Mode initial_mode, bool record = true);

    Mode mode() const noexcept { return mode_; }

    /// Switch (and pay) at time t if `leave` is set.
    void decide(double t, bool leave);
    /// Accrue the running payoff between consecutive states m_a -> m_b.
    void accrue(double m_a, double m_b, double dt);

    StrategyExecution& execution() noexcept { return execution_; }
    double payoff() const noexcept { return execution_.realized_payoff; }

private:
    const ProblemSpec& spec_;
    Mode mode_;
    bool record_;
    StrategyExecution execution_;
};

/// Nearest-node lookup into SwitchingRegions; out-of-range states clamp to the
/// closest node and are counted.
class RegionPolicy {
public:
    explicit RegionPolicy(const SwitchingRegions& regions);

    bool leave(double t, double m, Mode mode, std::size_t& clamped) const noexcept;

private:
    const SwitchingRegions& regions_;
    double dt_;
    double dx_;
};

/// Hysteresis rule: open when m >= open_level, close when m <= close_level.
class ThresholdPolicy {
public:
    /// Throws DomainError when close_level > open_level.
    ThresholdPolicy(double open_level, double close_level);

    bool leave(double, double m, Mode mode, std::size_t&) const noexcept {
        return mode == Mode::Closed ? m >= open_level_ : m <= close_level_;
    }

private:
    double open_level_;
    double close_level_;
};

/// Execute the switching regions along a reduced-process path that starts at
/// t0. No decision is taken at the terminal time.
StrategyExecution run_strategy(const ReducedPath& path, const SwitchingRegions& regions,
                               const ProblemSpec& spec, double t0, Mode initial_mode);

/// Monte Carlo value of the region policy from (t0, m0) over n_paths reduced
/// paths with n_steps steps to the horizon. Deterministic given seed.
MCEstimate estimate_value(const ProblemSpec& spec, const SwitchingRegions& regions, double t0,
                          double m0, Mode initial_mode, std::size_t n_paths, std::size_t n_steps,
                          std::uint64_t seed);

/// Monte Carlo value of the explicit hysteresis policy. Pass
/// +infinity / -infinity to disable opening / closing.
MCEstimate evaluate_threshold_strategy(const ProblemSpec& spec, double open_level,
                                       double close_level, double t0, double m0,
                                       Mode initial_mode, std::size_t n_paths, std::size_t n_steps,
                                       std::uint64_t seed);

/// Number of PDE time steps between t0 and the horizon on `grid`, i.e. the
/// path step count that aligns decisions with the region lattice.
std::size_t aligned_steps(const Grid& grid, double horizon, double t0);

}  // namespace obswitch
