#include "obswitch/tridiagonal.hpp"

#include <algorithm>
#include <cmath>

#include "obswitch/error.hpp"

namespace obswitch {

void TridiagonalMatrix::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) throw DomainError("tridiagonal multiply: size mismatch");
    if (n == 0) return;
    if (n == 1) {
        y[0] = diag[0] * x[0];
        return;
    }
    y[0] = diag[0] * x[0] + upper[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        y[i] = lower[i] * x[i - 1] + diag[i] * x[i] + upper[i] * x[i + 1];
    }
    y[n - 1] = lower[n - 1] * x[n - 2] + diag[n - 1] * x[n - 1];
}

ThomasSolver::ThomasSolver(const TridiagonalMatrix& matrix)
    : lower_(matrix.lower), c_prime_(matrix.size()), inv_pivot_(matrix.size()) {
    const std::size_t n = matrix.size();
    if (n == 0) throw DomainError("cannot factor an empty tridiagonal matrix");

    double pivot = matrix.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) pivot = matrix.diag[i] - matrix.lower[i] * c_prime_[i - 1];
        if (pivot == 0.0 || !std::isfinite(pivot)) {
            throw NumericError("zero or non-finite pivot in Thomas factorization", pivot);
        }
        inv_pivot_[i] = 1.0 / pivot;
        c_prime_[i] = i + 1 < n ? matrix.upper[i] * inv_pivot_[i] : 0.0;
    }
}

void ThomasSolver::solve(std::span<const double> rhs, std::span<double> x) const {
    const std::size_t n = size();
    if (rhs.size() != n || x.size() != n) throw DomainError("Thomas solve: size mismatch");

    x[0] = rhs[0] * inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
        x[i] = (rhs[i] - lower_[i] * x[i - 1]) * inv_pivot_[i];
    }
    for (std::size_t i = n - 1; i > 0; --i) {
        x[i - 1] -= c_prime_[i - 1] * x[i];
    }
}

int projected_sor(const TridiagonalMatrix& matrix, std::span<const double> rhs,
                  std::span<const double> obstacle, std::span<double> x, double omega, double tol,
                  int max_sweeps) {
    const std::size_t n = matrix.size();
    if (rhs.size() != n || obstacle.size() != n || x.size() != n) {
        throw DomainError("projected SOR: size mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], obstacle[i]);

    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double residual = rhs[i] - matrix.diag[i] * x[i];
            if (i > 0) residual -= matrix.lower[i] * x[i - 1];
            if (i + 1 < n) residual -= matrix.upper[i] * x[i + 1];
            const double updated = std::max(obstacle[i], x[i] + omega * residual / matrix.diag[i]);
            change = std::max(change, std::abs(updated - x[i]));
            x[i] = updated;
        }
        if (change < tol) return sweep;
    }
    return -1;
}

}  // namespace obswitch
