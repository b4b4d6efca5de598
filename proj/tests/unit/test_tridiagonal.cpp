#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "obswitch/error.hpp"
#include "obswitch/tridiagonal.hpp"
#include "oracles.hpp"

namespace obswitch {
namespace {

TridiagonalMatrix random_dominant(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TridiagonalMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.lower[i] = i > 0 ? u(rng) : 0.0;
        a.upper[i] = i + 1 < n ? u(rng) : 0.0;
        a.diag[i] = std::abs(a.lower[i]) + std::abs(a.upper[i]) + 0.5 + std::abs(u(rng));
    }
    return a;
}

std::vector<std::vector<double>> dense(const TridiagonalMatrix& a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        out[i][i] = a.diag[i];
        if (i > 0) out[i][i - 1] = a.lower[i];
        if (i + 1 < n) out[i][i + 1] = a.upper[i];
    }
    return out;
}

TEST(Thomas, AgreesWithDenseElimination) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u}) {
        const auto a = random_dominant(n, rng);
        std::vector<double> b(n);
        for (auto& v : b) v = u(rng);
        const auto expected = oracle::dense_solve(dense(a), b);
        std::vector<double> x(n);
        ThomasSolver(a).solve(b, x);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], expected[i], 1e-12) << "n=" << n;
    }
}

TEST(Thomas, ReusableAndAliasSafe) {
    std::mt19937_64 rng(1);
    const auto a = random_dominant(10, rng);
    const ThomasSolver solver(a);
    std::vector<double> b(10, 1.0), x(10), y(10);
    solver.solve(b, x);
    a.multiply(x, y);
    for (std::size_t i = 0; i < 10; ++i) EXPECT_NEAR(y[i], 1.0, 1e-12);
    solver.solve(b, b);  // in place
    for (std::size_t i = 0; i < 10; ++i) EXPECT_DOUBLE_EQ(b[i], x[i]);
}

TEST(Thomas, RejectsSingularAndMismatched) {
    TridiagonalMatrix a(2);
    EXPECT_THROW(ThomasSolver{a}, NumericError);
    EXPECT_THROW(ThomasSolver{TridiagonalMatrix(0)}, DomainError);
    a.diag = {1.0, 1.0};
    const ThomasSolver solver(a);
    std::vector<double> b(3), x(2);
    EXPECT_THROW(solver.solve(b, x), DomainError);
}

TEST(ProjectedSor, SolvesComplementarityProblem) {
    // -u'' = -1 on a 1-D lattice with obstacle u >= 0: the solution touches the obstacle.
    const std::size_t n = 41;
    TridiagonalMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        a.lower[i] = -1.0;
        a.diag[i] = 2.0;
        a.upper[i] = -1.0;
    }
    std::vector<double> b(n, -0.01), obstacle(n, 0.0), x(n, 1.0);
    for (std::size_t i = 0; i < 5; ++i) obstacle[i] = 0.2 - 0.04 * static_cast<double>(i);
    const int sweeps = projected_sor(a, b, obstacle, x, 1.7, 1e-14, 100000);
    ASSERT_GT(sweeps, 0);

    std::vector<double> ax(n);
    a.multiply(x, ax);
    for (std::size_t i = 0; i < n; ++i) {
        EXPECT_GE(x[i], obstacle[i] - 1e-12);
        EXPECT_GE(ax[i] - b[i], -1e-10);
        EXPECT_NEAR((ax[i] - b[i]) * (x[i] - obstacle[i]), 0.0, 1e-10);
    }
}

TEST(ProjectedSor, InactiveObstacleReducesToLinearSolve) {
    std::mt19937_64 rng(3);
    const auto a = random_dominant(20, rng);
    std::vector<double> b(20, 2.0), obstacle(20, -1e9), x(20, 0.0), exact(20);
    ThomasSolver(a).solve(b, exact);
    ASSERT_GT(projected_sor(a, b, obstacle, x, 1.0, 1e-15, 10000), 0);
    for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(x[i], exact[i], 1e-12);
}

}  // namespace
}  // namespace obswitch
