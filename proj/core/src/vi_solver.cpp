#include "obswitch/vi_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "obswitch/error.hpp"
#include "obswitch/tridiagonal.hpp"

namespace obswitch {

namespace {

double max_abs(std::span<const double> values) noexcept {
    double out = 0.0;
    for (double v : values) out = std::max(out, std::abs(v));
    return out;
}

bool all_finite(std::span<const double> values) noexcept {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

/// Crank-Nicolson operator for one backward step on the interior nodes
/// 1..n-2, with the zero-curvature end conditions folded into the first and
/// last interior rows.
class CrankNicolsonStep {
public:
    CrankNicolsonStep(std::size_t n_x, double ratio) : ratio_(ratio), matrix_(n_x - 2) {
        const std::size_t m = n_x - 2;
        for (std::size_t i = 0; i < m; ++i) {
            matrix_.lower[i] = -ratio;
            matrix_.diag[i] = 1.0 + 2.0 * ratio;
            matrix_.upper[i] = -ratio;
        }
        // u_0 = 2 u_1 - u_2 turns row 1 into u_1 = rhs_1 (likewise at the far end).
        matrix_.diag[0] += -2.0 * ratio;
        matrix_.upper[0] += ratio;
        matrix_.diag[m - 1] += -2.0 * ratio;
        matrix_.lower[m - 1] += ratio;
        if (m == 1) {
            matrix_.diag[0] = 1.0;
        }
        solver_ = ThomasSolver(matrix_);
    }

    const TridiagonalMatrix& matrix() const noexcept { return matrix_; }

    /// Explicit half of the step: rhs_j = v_j + r D2 v_j + dt psi_j on interior nodes.
    void build_rhs(std::span<const double> next_level, std::span<const double> source_dt,
                   std::span<double> rhs) const noexcept {
        const std::size_t m = rhs.size();
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + 1;
            const double curvature = next_level[j - 1] - 2.0 * next_level[j] + next_level[j + 1];
            rhs[i] = next_level[j] + ratio_ * curvature + source_dt[j];
        }
    }

    void solve_unconstrained(std::span<const double> rhs, std::span<double> level) const {
        solver_.solve(rhs, level.subspan(1, rhs.size()));
        extrapolate_ends(level);
    }

    static void extrapolate_ends(std::span<double> level) noexcept {
        const std::size_t n = level.size();
        level[0] = 2.0 * level[1] - level[2];
        level[n - 1] = 2.0 * level[n - 2] - level[n - 3];
    }

private:
    double ratio_;
    TridiagonalMatrix matrix_;
    ThomasSolver solver_;
};

struct ModeWork {
    std::vector<double> source_dt;
    std::vector<double> rhs;
    std::vector<double> free;      // unconstrained solution
    std::vector<double> iterate;   // current projected iterate
    std::vector<double> previous;  // iterate before the latest sweep
    std::vector<double> obstacle;
};

}  // namespace

ValueSurface::ValueSurface(Grid grid, ProblemSpec spec, std::vector<double> v0,
                           std::vector<double> v1)
    : grid_(grid), spec_(spec), v0_(std::move(v0)), v1_(std::move(v1)) {
    grid_.validate();
    const std::size_t expected = (grid_.n_t + 1) * grid_.n_x;
    if (v0_.size() != expected || v1_.size() != expected) {
        throw DomainError("value arrays must hold (n_t + 1) * n_x entries");
    }
    scale_ = 1.0 + std::max(max_abs(v0_), max_abs(v1_));
}

double diffusion_coeff(double t, double epsilon) {
    if (!(t >= 0.0)) throw DomainError("t must be non-negative");
    if (!(epsilon >= 0.0)) throw DomainError("epsilon must be non-negative");
    if (epsilon == 0.0) return 0.5;
    const double th = std::tanh(t / epsilon);
    return 0.5 * th * th;
}

ValueSurface solve(const ProblemSpec& spec, const Grid& grid, const SolverOptions& options) {
    spec.validate();
    grid.validate();
    if (options.max_inner < 1) throw DomainError("max_inner must be at least 1");

    const std::size_t n = grid.n_x;
    const std::size_t interior = n - 2;
    const double dx = grid.dx();
    const double dt = grid.dt(spec.horizon);

    std::vector<double> v0((grid.n_t + 1) * n, 0.0);
    std::vector<double> v1((grid.n_t + 1) * n, 0.0);

    ModeWork work[2];
    for (auto& w : work) {
        w.source_dt.assign(n, 0.0);
        w.rhs.assign(interior, 0.0);
        w.free.assign(n, 0.0);
        w.iterate.assign(n, 0.0);
        w.previous.assign(n, 0.0);
        w.obstacle.assign(n, 0.0);
    }
    for (std::size_t j = 0; j < n; ++j) work[1].source_dt[j] = dt * spec.psi1(grid.x(j));

    const double costs[2] = {spec.c01, spec.c10};
    std::vector<double> interior_obstacle(interior);

    for (std::size_t k = grid.n_t; k-- > 0;) {
        const double t_mid = (static_cast<double>(k) + 0.5) * dt;
        const double ratio = diffusion_coeff(t_mid, spec.epsilon) * dt / (2.0 * dx * dx);
        const CrankNicolsonStep step(n, ratio);

        const std::span<const double> next[2] = {
            std::span<const double>(v0).subspan((k + 1) * n, n),
            std::span<const double>(v1).subspan((k + 1) * n, n)};

        for (int mode = 0; mode < 2; ++mode) {
            auto& w = work[mode];
            step.build_rhs(next[mode], w.source_dt, w.rhs);
            step.solve_unconstrained(w.rhs, w.free);
            w.iterate = w.free;
        }

        double change = 0.0;
        int sweep = 0;
        for (; sweep < options.max_inner; ++sweep) {
            change = 0.0;
            for (int mode = 0; mode < 2; ++mode) {
                auto& w = work[mode];
                const auto& partner = work[1 - mode].iterate;
                w.previous = w.iterate;
                for (std::size_t j = 0; j < n; ++j) w.obstacle[j] = partner[j] - costs[mode];

                if (options.method == ProjectionMethod::Clamp) {
                    for (std::size_t j = 0; j < n; ++j) {
                        w.iterate[j] = std::max(w.free[j], w.obstacle[j]);
                    }
                } else {
                    std::copy(w.obstacle.begin() + 1, w.obstacle.end() - 1,
                              interior_obstacle.begin());
                    const double sor_tol = options.sor_tol * (1.0 + max_abs(w.iterate));
                    const int sweeps = projected_sor(
                        step.matrix(), w.rhs, interior_obstacle,
                        std::span<double>(w.iterate).subspan(1, interior), options.sor_omega,
                        sor_tol, options.sor_max_sweeps);
                    if (sweeps < 0) {
                        throw NumericError("projected SOR did not converge at level " +
                                               std::to_string(k),
                                           sor_tol);
                    }
                    CrankNicolsonStep::extrapolate_ends(w.iterate);
                    w.iterate[0] = std::max(w.iterate[0], w.obstacle[0]);
                    w.iterate[n - 1] = std::max(w.iterate[n - 1], w.obstacle[n - 1]);
                }
                for (std::size_t j = 0; j < n; ++j) {
                    change = std::max(change, std::abs(w.iterate[j] - w.previous[j]));
                }
            }
            const double level_scale =
                1.0 + std::max(max_abs(work[0].iterate), max_abs(work[1].iterate));
            if (!std::isfinite(change) || !all_finite(work[0].iterate) ||
                !all_finite(work[1].iterate)) {
                throw NumericError("non-finite value at time level " + std::to_string(k), change);
            }
            if (change < options.inner_tol * level_scale) break;
        }
        if (sweep == options.max_inner) {
            throw NumericError("mode coupling did not converge at time level " + std::to_string(k) +
                                   " (residual " + std::to_string(change) + ")",
                               change);
        }

        std::copy(work[0].iterate.begin(), work[0].iterate.end(), v0.begin() + k * n);
        std::copy(work[1].iterate.begin(), work[1].iterate.end(), v1.begin() + k * n);
    }

    return ValueSurface(grid, spec, std::move(v0), std::move(v1));
}

double value_at(const ValueSurface& surface, double t, double m, Mode mode) {
    const Grid& grid = surface.grid();
    const double horizon = surface.spec().horizon;
    const double slack = 1e-12 * (1.0 + std::max(std::abs(grid.x_min), std::abs(grid.x_max)));
    if (!(t >= -1e-12 * horizon && t <= horizon * (1.0 + 1e-12))) {
        throw DomainError("value_at: t outside [0, T]");
    }
    if (!(m >= grid.x_min - slack && m <= grid.x_max + slack)) {
        throw DomainError("value_at: m outside [x_min, x_max]");
    }

    const double ft = std::clamp(t / grid.dt(horizon), 0.0, static_cast<double>(grid.n_t));
    const double fx = std::clamp((m - grid.x_min) / grid.dx(), 0.0, static_cast<double>(grid.n_x - 1));
    const std::size_t k = std::min(static_cast<std::size_t>(ft), grid.n_t - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(fx), grid.n_x - 2);
    const double wt = ft - static_cast<double>(k);
    const double wx = fx - static_cast<double>(j);

    const double lower = (1.0 - wx) * surface.at(mode, k, j) + wx * surface.at(mode, k, j + 1);
    const double upper =
        (1.0 - wx) * surface.at(mode, k + 1, j) + wx * surface.at(mode, k + 1, j + 1);
    return (1.0 - wt) * lower + wt * upper;
}

double region_tolerance(const ValueSurface& surface) noexcept {
    // Capped so that S0 and S1 can never overlap, even for tiny costs.
    const auto& spec = surface.spec();
    return std::min(1e-8 * surface.scale(), 0.25 * (spec.c01 + spec.c10));
}

SwitchingRegions extract_regions(const ValueSurface& surface) {
    const auto& spec = surface.spec();
    SwitchingRegions regions;
    regions.grid = surface.grid();
    regions.horizon = spec.horizon;
    regions.tolerance = region_tolerance(surface);

    const auto v0 = surface.values(Mode::Closed);
    const auto v1 = surface.values(Mode::Open);
    regions.in_S0.resize(v0.size());
    regions.in_S1.resize(v1.size());
    for (std::size_t i = 0; i < v0.size(); ++i) {
        regions.in_S0[i] = v0[i] - (v1[i] - spec.c01) <= regions.tolerance;
        regions.in_S1[i] = v1[i] - (v0[i] - spec.c10) <= regions.tolerance;
    }
    return regions;
}

double no_info_value(double t, double m, const ProblemSpec& spec) {
    if (!(t >= 0.0 && t <= spec.horizon)) throw DomainError("no_info_value: t outside [0, T]");
    return m > 0.0 ? (spec.horizon - t) * spec.psi1(m) : 0.0;
}

double convergence_constant() noexcept {
    return std::sqrt(4.0 * std::numbers::ln2 / std::numbers::pi - 2.0 / std::numbers::pi);
}

double convergence_bound(double t, double horizon, double epsilon, double slope) {
    if (!(t >= 0.0 && t <= horizon)) throw DomainError("convergence_bound: t outside [0, T]");
    if (!(epsilon >= 0.0)) throw DomainError("convergence_bound: epsilon must be >= 0");
    return slope * (horizon - t) * std::sqrt(epsilon) * convergence_constant();
}

}  // namespace obswitch
