#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "obswitch/problem.hpp"

namespace obswitch {

/// Mode-indexed value functions sampled on a Grid, row-major over
/// (time level k = 0..n_t, space node j = 0..n_x-1).
class ValueSurface {
public:
    /// Takes ownership of the two arrays; each must hold (n_t + 1) * n_x values.
    ValueSurface(Grid grid, ProblemSpec spec, std::vector<double> v0, std::vector<double> v1);

    const Grid& grid() const noexcept { return grid_; }
    const ProblemSpec& spec() const noexcept { return spec_; }

    std::size_t levels() const noexcept { return grid_.n_t + 1; }
    std::size_t nodes() const noexcept { return grid_.n_x; }

    double time(std::size_t k) const noexcept { return grid_.dt(spec_.horizon) * static_cast<double>(k); }
    double x(std::size_t j) const noexcept { return grid_.x(j); }

    double at(Mode mode, std::size_t k, std::size_t j) const noexcept {
        return values(mode)[k * grid_.n_x + j];
    }
    std::span<const double> level(Mode mode, std::size_t k) const noexcept {
        return values(mode).subspan(k * grid_.n_x, grid_.n_x);
    }
    std::span<const double> values(Mode mode) const noexcept {
        return mode == Mode::Closed ? std::span<const double>(v0_) : std::span<const double>(v1_);
    }

    /// 1 + max |v| over both modes and all nodes.
    double scale() const noexcept { return scale_; }

private:
    Grid grid_;
    ProblemSpec spec_;
    std::vector<double> v0_;
    std::vector<double> v1_;
    double scale_ = 1.0;
};

/// Per-node membership of the switching regions S0 and S1.
struct SwitchingRegions {
    Grid grid;
    double horizon = 1.0;
    double tolerance = 0.0;
    std::vector<unsigned char> in_S0;
    std::vector<unsigned char> in_S1;

    bool contains(Mode mode, std::size_t k, std::size_t j) const noexcept {
        const auto& region = mode == Mode::Closed ? in_S0 : in_S1;
        return region[k * grid.n_x + j] != 0;
    }
};

enum class ProjectionMethod {
    /// Unconstrained Crank-Nicolson solve followed by clamping onto the obstacle.
    Clamp,
    /// Projected SOR on each mode's linear complementarity problem.
    ProjectedSor,
};

struct SolverOptions {
    ProjectionMethod method = ProjectionMethod::Clamp;
    double inner_tol = 1e-12;  // relative to 1 + max |v| at the current level
    int max_inner = 200;
    double sor_omega = 1.5;
    double sor_tol = 1e-13;
    int sor_max_sweeps = 20000;
};

/// Generator coefficient of the reduced process: 0.5 tanh^2(t / eps), or 0.5
/// when eps = 0. Throws DomainError for negative arguments.
double diffusion_coeff(double t, double epsilon);

/// Backward Crank-Nicolson march of the coupled obstacle system
///   min{ v0 - (v1 - c01), -d_t v0 - a(t) d_xx v0 - psi0 } = 0
///   min{ v1 - (v0 - c10), -d_t v1 - a(t) d_xx v1 - psi1 } = 0
/// from v(T) = 0. Each step alternates the two modes (Gauss-Seidel over the
/// mode index) until the sup-norm change drops below the inner tolerance.
/// Both ends impose a zero second difference.
///
/// Throws NumericError on NaN/Inf or when the inner iteration fails to converge.
ValueSurface solve(const ProblemSpec& spec, const Grid& grid, const SolverOptions& options = {});

/// Bilinear interpolation. Throws DomainError outside the grid rectangle.
double value_at(const ValueSurface& surface, double t, double m, Mode mode);

/// Region tolerance used by extract_regions: 1e-8 * surface.scale(), capped
/// at (c01 + c10) / 4.
double region_tolerance(const ValueSurface& surface) noexcept;

/// S_i holds the nodes where v_i - (v_{1-i} - c_{i,1-i}) <= region_tolerance.
SwitchingRegions extract_regions(const ValueSurface& surface);

/// Mode-1 value with no observation at all: (T - t) psi1(m) for m > 0, else 0.
double no_info_value(double t, double m, const ProblemSpec& spec);

/// sqrt(4 log 2 / pi - 2 / pi) ~= 0.49587.
double convergence_constant() noexcept;

/// slope * (T - t) * sqrt(eps) * convergence_constant(): the bound on
/// v^0 - v^eps for an affine payoff with the given slope.
double convergence_bound(double t, double horizon, double epsilon, double slope);

}  // namespace obswitch
