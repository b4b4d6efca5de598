#include "obswitch/strategy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obswitch/error.hpp"
#include "obswitch/parallel.hpp"
#include "obswitch/rng.hpp"

namespace obswitch {

namespace {

constexpr std::size_t kMinPaths = 100;

MCEstimate summarize(const std::vector<double>& payoffs) {
    MCEstimate estimate;
    estimate.n_paths = payoffs.size();
    const double n = static_cast<double>(payoffs.size());
    double sum = 0.0;
    for (double p : payoffs) sum += p;
    estimate.mean = sum / n;
    double ss = 0.0;
    for (double p : payoffs) ss += (p - estimate.mean) * (p - estimate.mean);
    estimate.std_err = payoffs.size() > 1 ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    return estimate;
}

/// Simulate n_paths reduced paths from (t0, m0) and run `policy` along each.
/// Path i uses the stream keyed by (seed, i), the same one simulate_reduced_path uses.
template <class Policy>
MCEstimate monte_carlo(const ProblemSpec& spec, const Policy& policy, double t0, double m0,
                       Mode initial_mode, std::size_t n_paths, std::size_t n_steps,
                       std::uint64_t seed) {
    spec.validate();
    if (n_paths < kMinPaths) {
        throw DomainError("Monte Carlo estimates need at least " + std::to_string(kMinPaths) +
                          " paths");
    }
    const ReducedIncrements increments(t0, spec.epsilon, spec.horizon, n_steps);
    const double dt = increments.dt();

    std::vector<double> payoffs(n_paths);
    parallel_for(n_paths, [&](std::size_t i) {
        NormalStream signal(seed, i, Series::Signal);
        PolicyRunner runner(spec, initial_mode, /*record=*/false);
        std::size_t clamped = 0;
        double x = m0;
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double t = increments.time(k);
            runner.decide(t, policy.leave(t, x, runner.mode(), clamped));
            const double x_next = x + increments.sd(k) * signal.next();
            runner.accrue(x, x_next, dt);
            x = x_next;
        }
        payoffs[i] = runner.payoff();
    });
    return summarize(payoffs);
}

}  // namespace

PolicyRunner::PolicyRunner(const ProblemSpec& spec, Mode initial_mode, bool record)
    : spec_(spec), mode_(initial_mode), record_(record) {
    if (record_) execution_.modes.push_back(initial_mode);
}

void PolicyRunner::decide(double t, bool leave) {
    if (!leave) return;
    const double cost = spec_.switch_cost(mode_);
    execution_.total_cost += cost;
    execution_.realized_payoff -= cost;
    if (mode_ == Mode::Closed) {
        ++execution_.opens;
    } else {
        ++execution_.closes;
    }
    mode_ = other(mode_);
    if (record_) {
        execution_.switch_times.push_back(t);
        execution_.modes.push_back(mode_);
    }
}

void PolicyRunner::accrue(double m_a, double m_b, double dt) {
    if (mode_ != Mode::Open) return;
    execution_.realized_payoff +=
        dt * (spec_.psi1_slope * 0.5 * (m_a + m_b) + spec_.psi1_intercept);
}

RegionPolicy::RegionPolicy(const SwitchingRegions& regions)
    : regions_(regions), dt_(regions.grid.dt(regions.horizon)), dx_(regions.grid.dx()) {}

bool RegionPolicy::leave(double t, double m, Mode mode, std::size_t& clamped) const noexcept {
    const Grid& grid = regions_.grid;
    const double ft = std::round(t / dt_);
    const double fx = std::round((m - grid.x_min) / dx_);
    const double last_level = static_cast<double>(grid.n_t);
    const double last_node = static_cast<double>(grid.n_x - 1);
    if (fx < 0.0 || fx > last_node || ft < 0.0 || ft > last_level) ++clamped;
    const auto k = static_cast<std::size_t>(std::clamp(ft, 0.0, last_level));
    const auto j = static_cast<std::size_t>(std::clamp(fx, 0.0, last_node));
    return regions_.contains(mode, k, j);
}

ThresholdPolicy::ThresholdPolicy(double open_level, double close_level)
    : open_level_(open_level), close_level_(close_level) {
    if (std::isnan(open_level) || std::isnan(close_level) || close_level > open_level) {
        throw DomainError("threshold policy needs close_level <= open_level");
    }
}

StrategyExecution run_strategy(const ReducedPath& path, const SwitchingRegions& regions,
                               const ProblemSpec& spec, double t0, Mode initial_mode) {
    if (path.size() == 0) throw DomainError("run_strategy: empty path");
    if (std::abs(path.times.front() - t0) > 1e-12 * (1.0 + spec.horizon)) {
        throw DomainError("run_strategy: path must start at t0");
    }
    const RegionPolicy policy(regions);
    PolicyRunner runner(spec, initial_mode);
    std::size_t clamped = 0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        runner.decide(path.times[k], policy.leave(path.times[k], path.X[k], runner.mode(), clamped));
        runner.accrue(path.X[k], path.X[k + 1], path.times[k + 1] - path.times[k]);
    }
    runner.execution().clamped_lookups = clamped;
    return std::move(runner.execution());
}

MCEstimate estimate_value(const ProblemSpec& spec, const SwitchingRegions& regions, double t0,
                          double m0, Mode initial_mode, std::size_t n_paths, std::size_t n_steps,
                          std::uint64_t seed) {
    return monte_carlo(spec, RegionPolicy(regions), t0, m0, initial_mode, n_paths, n_steps, seed);
}

MCEstimate evaluate_threshold_strategy(const ProblemSpec& spec, double open_level,
                                       double close_level, double t0, double m0,
                                       Mode initial_mode, std::size_t n_paths, std::size_t n_steps,
                                       std::uint64_t seed) {
    return monte_carlo(spec, ThresholdPolicy(open_level, close_level), t0, m0, initial_mode,
                       n_paths, n_steps, seed);
}

std::size_t aligned_steps(const Grid& grid, double horizon, double t0) {
    if (!(t0 >= 0.0 && t0 < horizon)) throw DomainError("aligned_steps: t0 must lie in [0, T)");
    const double dt = grid.dt(horizon);
    const double level = std::round(t0 / dt);
    if (std::abs(level * dt - t0) > 1e-9 * dt) {
        throw DomainError("aligned_steps: t0 is not on a grid time level");
    }
    return grid.n_t - static_cast<std::size_t>(level);
}

}  // namespace obswitch
