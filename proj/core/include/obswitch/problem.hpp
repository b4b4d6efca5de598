#pragma once

#include <cstddef>

namespace obswitch {

/// Facility state. Closed earns psi0 = 0; Open earns psi1(m).
enum class Mode : int { Closed = 0, Open = 1 };

constexpr Mode other(Mode mode) noexcept {
    return mode == Mode::Closed ? Mode::Open : Mode::Closed;
}
constexpr int index(Mode mode) noexcept { return static_cast<int>(mode); }

/// Throws DomainError unless value is 0 or 1.
Mode mode_from_int(int value);

/// Two-mode switching problem with affine open-state payoff
/// psi1(x) = psi1_slope * x + psi1_intercept and psi0 = 0.
struct ProblemSpec {
    double epsilon = 0.0;  // observation noise level
    double horizon = 1.0;  // T
    double c01 = 0.01;     // cost of opening
    double c10 = 0.001;    // cost of closing
    double psi1_slope = 10.0;
    double psi1_intercept = 0.0;

    /// Cost-of-opening 0.01, cost-of-closing 0.001, psi1(x) = 10x, T = 1.
    static ProblemSpec baseline(double epsilon);

    double psi1(double x) const noexcept { return psi1_slope * x + psi1_intercept; }
    double switch_cost(Mode from) const noexcept { return from == Mode::Closed ? c01 : c10; }

    /// Throws DomainError on non-positive costs or horizon, or negative epsilon.
    void validate() const;

    /// Same problem apart from the noise level.
    bool same_apart_from_epsilon(const ProblemSpec& other) const noexcept;

    bool operator==(const ProblemSpec&) const = default;
};

/// Uniform space-time lattice: n_x nodes in [x_min, x_max], n_t steps in [0, T].
struct Grid {
    double x_min = -8.0;
    double x_max = 8.0;
    std::size_t n_x = 1601;
    std::size_t n_t = 1600;

    double dx() const noexcept { return (x_max - x_min) / static_cast<double>(n_x - 1); }
    double dt(double horizon) const noexcept { return horizon / static_cast<double>(n_t); }
    double x(std::size_t j) const noexcept { return x_min + static_cast<double>(j) * dx(); }

    /// Throws DomainError unless x_min < x_max, n_x >= 3 and n_t >= 1.
    void validate() const;

    /// Doubled resolution over the same rectangle: 2(n_x - 1) + 1 nodes, 2 n_t steps.
    Grid refined() const noexcept;

    bool operator==(const Grid&) const = default;
};

}  // namespace obswitch
