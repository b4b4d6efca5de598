#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace obswitch {

/// Tridiagonal matrix in band storage: row i is lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1].
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalMatrix {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit TridiagonalMatrix(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const noexcept { return diag.size(); }

    /// y = A x
    void multiply(std::span<const double> x, std::span<double> y) const;
};

/// Thomas-algorithm factorization, reusable for many right-hand sides.
/// Assumes no pivoting is needed (diagonally dominant systems).
class ThomasSolver {
public:
    ThomasSolver() = default;
    explicit ThomasSolver(const TridiagonalMatrix& matrix);

    std::size_t size() const noexcept { return inv_pivot_.size(); }

    /// Solve A x = rhs. rhs and x may alias.
    void solve(std::span<const double> rhs, std::span<double> x) const;

private:
    std::vector<double> lower_;
    std::vector<double> c_prime_;
    std::vector<double> inv_pivot_;
};

/// Projected SOR for the complementarity problem
///   A x >= b, x >= obstacle, (A x - b)^T (x - obstacle) = 0.
/// x holds the starting iterate on entry. Returns the number of sweeps, or
/// -1 when max_sweeps is reached without the update falling below tol.
int projected_sor(const TridiagonalMatrix& matrix, std::span<const double> rhs,
                  std::span<const double> obstacle, std::span<double> x, double omega, double tol,
                  int max_sweeps);

}  // namespace obswitch
