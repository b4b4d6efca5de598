#include "obswitch/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "obswitch/error.hpp"
#include "obswitch/rng.hpp"

namespace obswitch {

namespace {

void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0)) throw DomainError(std::string(name) + " must be non-negative");
}

PathSample simulate_filter(double W0, double m0, double t0, double epsilon, double horizon,
                           std::size_t n_steps, std::uint64_t seed, std::uint64_t path_index) {
    const double dt = (horizon - t0) / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    const double inv_eps2 = 1.0 / (epsilon * epsilon);

    PathSample path;
    path.epsilon = epsilon;
    path.dt = dt;
    const std::size_t n = n_steps + 1;
    path.times.resize(n);
    path.W.resize(n);
    path.xi.resize(n);
    path.m.resize(n);
    path.N.resize(n);

    NormalStream signal(seed, path_index, Series::Signal);
    NormalStream noise(seed, path_index, Series::Observation);

    path.times[0] = t0;
    path.W[0] = W0;
    path.xi[0] = m0;
    path.m[0] = m0;
    path.N[0] = 0.0;
    double drift_sum = 0.0;  // sum_{j<k} m[j] dt
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = path.times[k];
        const double theta = conditional_variance(t, epsilon);
        const double dB = sqrt_dt * signal.next();
        const double dB_obs = sqrt_dt * noise.next();
        const double dxi = path.W[k] * dt + epsilon * dB_obs;

        path.times[k + 1] = t0 + static_cast<double>(k + 1) * dt;
        path.W[k + 1] = path.W[k] + dB;
        path.xi[k + 1] = path.xi[k] + dxi;
        path.m[k + 1] = path.m[k] + theta * inv_eps2 * (dxi - path.m[k] * dt);
        drift_sum += path.m[k] * dt;
        path.N[k + 1] = (path.xi[k + 1] - path.xi[0]) - drift_sum;
    }
    if (!std::isfinite(path.m.back()) || !std::isfinite(path.W.back())) {
        throw NumericError("non-finite value in simulated filter path", path.m.back());
    }
    return path;
}

void validate_filter_inputs(double t0, double epsilon, double horizon, std::size_t n_steps) {
    if (!(epsilon > 0.0)) {
        throw DomainError("joint path simulation needs epsilon > 0; with perfect observation the "
                          "filter mean equals the signal");
    }
    if (n_steps == 0) throw DomainError("n_steps must be at least 1");
    require_non_negative(t0, "t0");
    if (!(horizon > t0)) throw DomainError("horizon must exceed the start time");
}

}  // namespace

FilterState PathSample::state(std::size_t k) const {
    return FilterState{times.at(k), m.at(k), conditional_variance(times.at(k), epsilon)};
}

double conditional_variance(double t, double epsilon) {
    require_non_negative(t, "t");
    require_non_negative(epsilon, "epsilon");
    if (epsilon == 0.0) return 0.0;
    return epsilon * std::tanh(t / epsilon);
}

double variance_ode_rhs(double theta, double epsilon) {
    const double ratio = theta / epsilon;
    return 1.0 - ratio * ratio;
}

PathSample simulate_joint_path(double x, double epsilon, double horizon, std::size_t n_steps,
                               std::uint64_t seed, std::uint64_t path_index) {
    validate_filter_inputs(0.0, epsilon, horizon, n_steps);
    return simulate_filter(x, x, 0.0, epsilon, horizon, n_steps, seed, path_index);
}

PathSample simulate_conditioned_joint_path(double m0, double t0, double epsilon, double horizon,
                                           std::size_t n_steps, std::uint64_t seed,
                                           std::uint64_t path_index) {
    validate_filter_inputs(t0, epsilon, horizon, n_steps);
    NormalStream initial(seed, path_index, Series::Initial);
    const double W0 = m0 + std::sqrt(conditional_variance(t0, epsilon)) * initial.next();
    return simulate_filter(W0, m0, t0, epsilon, horizon, n_steps, seed, path_index);
}

InnovationsReport innovations_diagnostics(const PathSample& path) {
    const std::size_t n = path.size();
    if (n < 2) throw DomainError("innovations diagnostics need at least two path points");
    if (path.xi.size() != n || path.m.size() != n) {
        throw DomainError("path arrays have inconsistent lengths");
    }

    InnovationsReport report;
    report.n_increments = n - 1;
    double sum = 0.0;
    double qv = 0.0;
    std::vector<double> increments(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double dxi = path.xi[k + 1] - path.xi[k];
        increments[k] = dxi - path.m[k] * path.dt;
        sum += increments[k];
        qv += dxi * dxi;
    }
    const double count = static_cast<double>(n - 1);
    report.increment_mean = sum / count;
    double ss = 0.0;
    for (double d : increments) ss += (d - report.increment_mean) * (d - report.increment_mean);
    report.increment_variance = ss / count;
    const double target = path.epsilon > 0.0 ? path.epsilon * path.epsilon * path.dt : path.dt;
    report.increment_variance_ratio = report.increment_variance / target;
    report.quadratic_variation_xi = qv;
    return report;
}

double reduced_variance(double t0, double s, double epsilon) {
    require_non_negative(t0, "t0");
    require_non_negative(epsilon, "epsilon");
    if (s < t0) throw DomainError("reduced_variance needs s >= t0");
    if (epsilon == 0.0) return s - t0;
    const double value = (s - t0) - epsilon * (std::tanh(s / epsilon) - std::tanh(t0 / epsilon));
    return std::max(0.0, value);
}

ReducedIncrements::ReducedIncrements(double t0, double epsilon, double horizon, std::size_t n_steps)
    : t0_(t0), dt_(0.0) {
    if (n_steps == 0) throw DomainError("n_steps must be at least 1");
    require_non_negative(t0, "t0");
    require_non_negative(epsilon, "epsilon");
    if (t0 > horizon) throw DomainError("t0 must not exceed the horizon");
    dt_ = (horizon - t0) / static_cast<double>(n_steps);
    sd_.resize(n_steps);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double a = time(k);
        const double b = k + 1 == n_steps ? horizon : time(k + 1);
        sd_[k] = std::sqrt(reduced_variance(a, b, epsilon));
    }
}

ReducedPath simulate_reduced_path(double m0, double t0, double epsilon, double horizon,
                                  std::size_t n_steps, std::uint64_t seed,
                                  std::uint64_t path_index) {
    const ReducedIncrements increments(t0, epsilon, horizon, n_steps);
    NormalStream signal(seed, path_index, Series::Signal);

    ReducedPath path;
    path.epsilon = epsilon;
    path.t0 = t0;
    path.dt = increments.dt();
    path.times.resize(n_steps + 1);
    path.X.resize(n_steps + 1);
    path.times[0] = t0;
    path.X[0] = m0;
    for (std::size_t k = 0; k < n_steps; ++k) {
        path.times[k + 1] = increments.time(k + 1);
        path.X[k + 1] = path.X[k] + increments.sd(k) * signal.next();
    }
    path.times[n_steps] = horizon;
    return path;
}

}  // namespace obswitch
