#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace obswitch {

/// Conditional law of the hidden signal given the observations at time t:
/// Gaussian with mean m and variance theta.
struct FilterState {
    double t = 0.0;
    double m = 0.0;
    double theta = 0.0;
};

/// Discretized joint trajectory of signal W, observation xi, filter mean m and
/// innovations N on the uniform time grid `times`.
struct PathSample {
    double epsilon = 0.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> W;
    std::vector<double> xi;
    std::vector<double> m;
    std::vector<double> N;

    std::size_t size() const noexcept { return times.size(); }
    FilterState state(std::size_t k) const;
};

/// eps * tanh(t / eps), the posterior variance of the signal; 0 for eps = 0.
/// Throws DomainError for negative arguments.
double conditional_variance(double t, double epsilon);

/// Right-hand side of the Riccati equation dtheta/dt = 1 - (theta/eps)^2.
double variance_ode_rhs(double theta, double epsilon);

/// Simulate (W, xi, m, N) from t = 0 with W_0 = m_0 = xi_0 = x.
///
/// Euler-Maruyama on
///   dW  = dB,  dxi = W dt + eps dB',  dm = (theta_t / eps^2)(dxi - m dt)
/// with theta_t taken from the closed form at the left endpoint of each step.
/// B and B' come from independent streams keyed by (seed, path_index).
/// Throws DomainError for eps <= 0 (the filter degenerates) or n_steps == 0.
PathSample simulate_joint_path(double x, double epsilon, double horizon, std::size_t n_steps,
                               std::uint64_t seed, std::uint64_t path_index = 0);

/// Same dynamics started at time t0 from the conditional law: m_{t0} = m0 and
/// W_{t0} ~ N(m0, theta(t0)). The variance schedule continues from theta(t0).
PathSample simulate_conditioned_joint_path(double m0, double t0, double epsilon, double horizon,
                                           std::size_t n_steps, std::uint64_t seed,
                                           std::uint64_t path_index = 0);

struct InnovationsReport {
    std::size_t n_increments = 0;
    double increment_mean = 0.0;
    double increment_variance = 0.0;
    /// increment_variance / (eps^2 dt); the normalized innovations N / eps are a
    /// Wiener process, so the target is 1. Uses dt alone when eps == 0.
    double increment_variance_ratio = 0.0;
    /// Realized quadratic variation of xi over the path; target eps^2 * (t_end - t_0).
    double quadratic_variation_xi = 0.0;
};

/// Throws DomainError for paths with fewer than two points.
InnovationsReport innovations_diagnostics(const PathSample& path);

/// Path of the reduced process dX_s = tanh(s / eps) dW_s, X_{t0} = m0.
struct ReducedPath {
    double epsilon = 0.0;
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> X;

    std::size_t size() const noexcept { return times.size(); }
};

/// Integral of tanh^2(r / eps) over [t0, s]:
///   (s - t0) - eps (tanh(s / eps) - tanh(t0 / eps)),  or s - t0 for eps = 0.
double reduced_variance(double t0, double s, double epsilon);

/// Increment generator shared by simulate_reduced_path and the Monte Carlo
/// policy evaluator so both see identical paths for the same (seed, index).
/// Each step draws one normal scaled by the exact increment standard deviation.
class ReducedIncrements {
public:
    ReducedIncrements(double t0, double epsilon, double horizon, std::size_t n_steps);

    double dt() const noexcept { return dt_; }
    std::size_t steps() const noexcept { return sd_.size(); }
    double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
    double sd(std::size_t k) const noexcept { return sd_[k]; }

private:
    double t0_;
    double dt_;
    std::vector<double> sd_;
};

/// eps = 0 gives a plain Brownian motion. Throws DomainError if t0 > horizon,
/// t0 < 0, eps < 0 or n_steps == 0.
ReducedPath simulate_reduced_path(double m0, double t0, double epsilon, double horizon,
                                  std::size_t n_steps, std::uint64_t seed,
                                  std::uint64_t path_index = 0);

}  // namespace obswitch
