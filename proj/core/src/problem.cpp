#include "obswitch/problem.hpp"

#include <cmath>
#include <string>

#include "obswitch/error.hpp"

namespace obswitch {

Mode mode_from_int(int value) {
    if (value == 0) return Mode::Closed;
    if (value == 1) return Mode::Open;
    throw DomainError("mode must be 0 or 1, got " + std::to_string(value));
}

ProblemSpec ProblemSpec::baseline(double epsilon) {
    ProblemSpec spec;
    spec.epsilon = epsilon;
    return spec;
}

void ProblemSpec::validate() const {
    if (!(epsilon >= 0.0) || std::isnan(epsilon)) throw DomainError("epsilon must be >= 0");
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon T must be > 0");
    if (!(c01 > 0.0) || !std::isfinite(c01)) throw DomainError("c01 must be a positive constant");
    if (!(c10 > 0.0) || !std::isfinite(c10)) throw DomainError("c10 must be a positive constant");
    if (!std::isfinite(psi1_slope) || !std::isfinite(psi1_intercept)) {
        throw DomainError("payoff coefficients must be finite");
    }
}

bool ProblemSpec::same_apart_from_epsilon(const ProblemSpec& other) const noexcept {
    return horizon == other.horizon && c01 == other.c01 && c10 == other.c10 &&
           psi1_slope == other.psi1_slope && psi1_intercept == other.psi1_intercept;
}

void Grid::validate() const {
    if (!(x_min < x_max) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
        throw DomainError("grid needs finite x_min < x_max");
    }
    if (n_x < 3) throw DomainError("grid needs n_x >= 3");
    if (n_t < 1) throw DomainError("grid needs n_t >= 1");
}

Grid Grid::refined() const noexcept {
    Grid fine = *this;
    fine.n_x = 2 * (n_x - 1) + 1;
    fine.n_t = 2 * n_t;
    return fine;
}

}  // namespace obswitch
