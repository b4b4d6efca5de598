#include <benchmark/benchmark.h>

#include <vector>

#include "obswitch/filtering.hpp"
#include "obswitch/strategy_sim.hpp"
#include "obswitch/tridiagonal.hpp"
#include "obswitch/vi_solver.hpp"

using namespace obswitch;

static void BM_ThomasSolve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    TridiagonalMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.lower[i] = -1.0;
        a.diag[i] = 4.0;
        a.upper[i] = -1.0;
    }
    const ThomasSolver solver(a);
    std::vector<double> rhs(n, 1.0), x(n);
    for (auto _ : state) {
        solver.solve(rhs, x);
        benchmark::DoNotOptimize(x.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThomasSolve)->Arg(1599)->Arg(3199);

static void BM_Solve(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid grid{-8.0, 8.0, n + 1, n};
    for (auto _ : state) {
        auto surface = solve(ProblemSpec::baseline(1.0), grid);
        benchmark::DoNotOptimize(surface.scale());
    }
}
BENCHMARK(BM_Solve)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

static void BM_SolveProjectedSor(benchmark::State& state) {
    SolverOptions options;
    options.method = ProjectionMethod::ProjectedSor;
    const Grid grid{-8.0, 8.0, 401, 400};
    for (auto _ : state) {
        auto surface = solve(ProblemSpec::baseline(1.0), grid, options);
        benchmark::DoNotOptimize(surface.scale());
    }
}
BENCHMARK(BM_SolveProjectedSor)->Unit(benchmark::kMillisecond);

static void BM_EstimateValue(benchmark::State& state) {
    const Grid grid;
    const auto surface = solve(ProblemSpec::baseline(1.0), grid);
    const auto regions = extract_regions(surface);
    const auto paths = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const auto est = estimate_value(surface.spec(), regions, 0.0, 0.0, Mode::Open, paths,
                                        aligned_steps(grid, 1.0, 0.0), 1);
        benchmark::DoNotOptimize(est.mean);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EstimateValue)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_JointPath(benchmark::State& state) {
    std::uint64_t index = 0;
    for (auto _ : state) {
        const auto path = simulate_joint_path(0.0, 1.0, 1.0, 1000, 1, index++);
        benchmark::DoNotOptimize(path.m.back());
    }
}
BENCHMARK(BM_JointPath);

BENCHMARK_MAIN();
