#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "obswitch/error.hpp"
#include "obswitch/filtering.hpp"
#include "obswitch/strategy_sim.hpp"
#include "obswitch/vi_solver.hpp"

namespace obswitch {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SwitchingRegions uniform_regions(bool s0, bool s1) {
    SwitchingRegions r;
    r.grid = Grid{-4.0, 4.0, 81, 100};
    r.horizon = 1.0;
    const std::size_t size = (r.grid.n_t + 1) * r.grid.n_x;
    r.in_S0.assign(size, s0);
    r.in_S1.assign(size, s1);
    return r;
}

const ValueSurface& surface_eps1() {
    static const ValueSurface s = solve(ProblemSpec::baseline(1.0), Grid{-4.0, 4.0, 161, 200});
    return s;
}

double trapezoid_payoff(const ReducedPath& path, const ProblemSpec& spec) {
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        sum += (path.times[k + 1] - path.times[k]) *
               (spec.psi1_slope * 0.5 * (path.X[k] + path.X[k + 1]) + spec.psi1_intercept);
    }
    return sum;
}

TEST(RunStrategy, NoSwitchingRegions) {
    const auto spec = ProblemSpec::baseline(1.0);
    const auto path = simulate_reduced_path(0.2, 0.0, 1.0, 1.0, 100, 3, 0);
    const auto regions = uniform_regions(false, false);

    const auto closed = run_strategy(path, regions, spec, 0.0, Mode::Closed);
    EXPECT_TRUE(closed.switch_times.empty());
    EXPECT_EQ(closed.realized_payoff, 0.0);
    ASSERT_EQ(closed.modes.size(), 1u);
    EXPECT_EQ(closed.modes[0], Mode::Closed);

    const auto open = run_strategy(path, regions, spec, 0.0, Mode::Open);
    EXPECT_TRUE(open.switch_times.empty());
    EXPECT_NEAR(open.realized_payoff, trapezoid_payoff(path, spec), 1e-12);
}

TEST(RunStrategy, OpenImmediatelyAndStay) {
    const auto spec = ProblemSpec::baseline(1.0);
    const auto path = simulate_reduced_path(-0.1, 0.0, 1.0, 1.0, 100, 3, 1);
    const auto exec = run_strategy(path, uniform_regions(true, false), spec, 0.0, Mode::Closed);
    ASSERT_EQ(exec.switch_times.size(), 1u);
    EXPECT_EQ(exec.switch_times[0], 0.0);
    EXPECT_EQ(exec.opens, 1u);
    EXPECT_EQ(exec.closes, 0u);
    EXPECT_NEAR(exec.realized_payoff, trapezoid_payoff(path, spec) - spec.c01, 1e-12);
}

TEST(RunStrategy, RejectsMisalignedStart) {
    const auto spec = ProblemSpec::baseline(1.0);
    const auto path = simulate_reduced_path(0.0, 0.5, 1.0, 1.0, 10, 1, 0);
    EXPECT_THROW(run_strategy(path, uniform_regions(false, false), spec, 0.0, Mode::Open),
                 DomainError);
    EXPECT_THROW(run_strategy(ReducedPath{}, uniform_regions(false, false), spec, 0.0, Mode::Open),
                 DomainError);
}

TEST(RunStrategy, CostAccountingAndAdaptedness) {
    const auto& surface = surface_eps1();
    const auto spec = surface.spec();
    const auto regions = extract_regions(surface);
    std::size_t paths_with_switches = 0;
    for (std::uint64_t i = 0; i < 200; ++i) {
        const auto path = simulate_reduced_path(0.0, 0.0, 1.0, 1.0, 200, 41, i);
        const auto exec = run_strategy(path, regions, spec, 0.0, Mode::Closed);
        EXPECT_NEAR(exec.total_cost,
                    static_cast<double>(exec.opens) * spec.c01 + static_cast<double>(exec.closes) * spec.c10,
                    1e-14);
        EXPECT_EQ(exec.modes.size(), exec.switch_times.size() + 1);
        EXPECT_TRUE(std::is_sorted(exec.switch_times.begin(), exec.switch_times.end()));
        for (std::size_t s = 0; s + 1 < exec.modes.size(); ++s) {
            EXPECT_NE(exec.modes[s], exec.modes[s + 1]);
        }
        if (!exec.switch_times.empty()) ++paths_with_switches;

        // Decisions on a prefix do not depend on the rest of the path.
        ReducedPath prefix = path;
        const std::size_t keep = 101;
        prefix.times.resize(keep);
        prefix.X.resize(keep);
        const auto truncated = run_strategy(prefix, regions, spec, 0.0, Mode::Closed);
        std::vector<double> expected;
        for (double t : exec.switch_times) {
            if (t < prefix.times.back()) expected.push_back(t);
        }
        EXPECT_EQ(truncated.switch_times, expected);
    }
    EXPECT_GT(paths_with_switches, 50u);
}

TEST(EstimateValue, MatchesPathwiseExecution) {
    const auto& surface = surface_eps1();
    const auto regions = extract_regions(surface);
    const std::size_t n = 400, steps = 200;
    const auto mc = estimate_value(surface.spec(), regions, 0.0, 0.1, Mode::Open, n, steps, 9);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto path = simulate_reduced_path(0.1, 0.0, 1.0, 1.0, steps, 9, i);
        sum += run_strategy(path, regions, surface.spec(), 0.0, Mode::Open).realized_payoff;
    }
    EXPECT_NEAR(mc.mean, sum / static_cast<double>(n), 1e-10);
    EXPECT_EQ(mc.n_paths, n);
}

TEST(EstimateValue, DeterministicAndSeedSensitive) {
    const auto& surface = surface_eps1();
    const auto regions = extract_regions(surface);
    const auto a = estimate_value(surface.spec(), regions, 0.0, 0.0, Mode::Closed, 2000, 200, 5);
    const auto b = estimate_value(surface.spec(), regions, 0.0, 0.0, Mode::Closed, 2000, 200, 5);
    const auto c = estimate_value(surface.spec(), regions, 0.0, 0.0, Mode::Closed, 2000, 200, 6);
    EXPECT_EQ(a.mean, b.mean);
    EXPECT_EQ(a.std_err, b.std_err);
    EXPECT_NE(a.mean, c.mean);
    EXPECT_THROW(estimate_value(surface.spec(), regions, 0.0, 0.0, Mode::Closed, 99, 200, 5),
                 DomainError);
}

TEST(ThresholdStrategy, NeverOpenIsWorthZero) {
    const auto est = evaluate_threshold_strategy(ProblemSpec::baseline(1.0), kInf, -kInf, 0.0, 0.3,
                                                 Mode::Closed, 1000, 100, 1);
    EXPECT_EQ(est.mean, 0.0);
    EXPECT_EQ(est.std_err, 0.0);
}

TEST(ThresholdStrategy, NeverCloseIsDominatedByValue) {
    const auto& surface = surface_eps1();
    const double m0 = 0.2;
    const auto est = evaluate_threshold_strategy(surface.spec(), kInf, -kInf, 0.0, m0, Mode::Open,
                                                 100000, 200, 2);
    // E of the integral of 10 X over [0, 1] is 10 m0.
    EXPECT_NEAR(est.mean, 10.0 * m0, 3.0 * est.std_err);
    EXPECT_LE(est.mean, value_at(surface, 0.0, m0, Mode::Open) + 3.0 * est.std_err);
}

TEST(ThresholdStrategy, SignPolicyWithNegligibleCosts) {
    auto spec = ProblemSpec::baseline(0.0);
    spec.c01 = 1e-9;
    spec.c10 = 1e-9;
    const auto est =
        evaluate_threshold_strategy(spec, 0.0, 0.0, 0.0, 0.0, Mode::Closed, 100000, 1000, 3);
    // 10 * integral of E[B_s^+] = 10 * (2/3) / sqrt(2 pi); discrete monitoring loses O(sqrt(dt)).
    const double exact = 10.0 * (2.0 / 3.0) / std::sqrt(2.0 * std::numbers::pi);
    EXPECT_NEAR(exact, 2.6596, 1e-4);
    EXPECT_LE(est.mean, exact + 3.0 * est.std_err);
    EXPECT_GE(est.mean, exact - 3.0 * est.std_err - 0.05);
}

TEST(ThresholdStrategy, RejectsInvertedLevels) {
    EXPECT_THROW(ThresholdPolicy(0.0, 0.1), DomainError);
    EXPECT_THROW(evaluate_threshold_strategy(ProblemSpec::baseline(1.0), 0.0, 0.1, 0.0, 0.0,
                                             Mode::Closed, 1000, 10, 1),
                 DomainError);
    EXPECT_NO_THROW(ThresholdPolicy(0.1, 0.1));
}

TEST(AlignedSteps, GridLevels) {
    const Grid grid;
    EXPECT_EQ(aligned_steps(grid, 1.0, 0.0), 1600u);
    EXPECT_EQ(aligned_steps(grid, 1.0, 0.5), 800u);
    EXPECT_THROW(aligned_steps(grid, 1.0, 0.5 + 1e-4), DomainError);
    EXPECT_THROW(aligned_steps(grid, 1.0, 1.0), DomainError);
}

}  // namespace
}  // namespace obswitch
