#include "obswitch/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "obswitch/error.hpp"

namespace obswitch {

namespace {

constexpr double kStructuralTol = 1e-3;
constexpr double kConvexityTol = 1e-4;
constexpr double kFeasibilityTol = 1e-8;

/// Running maximum of a violation together with where it happened.
struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    CheckLocation location;

    void offer(double candidate, const ValueSurface& s, std::size_t k, std::size_t j, Mode mode) {
        if (candidate > value) {
            value = candidate;
            location = CheckLocation{s.time(k), s.x(j), index(mode), s.spec().epsilon};
        }
    }
};

CheckReport finish(std::string name, const Worst& worst, double tolerance, std::string detail = {}) {
    CheckReport report;
    report.name = std::move(name);
    report.worst_violation = worst.value;
    report.tolerance = tolerance;
    report.location = worst.location;
    report.detail = std::move(detail);
    report.status = worst.value <= tolerance ? CheckStatus::Passed : CheckStatus::Failed;
    return report;
}

void require_compatible(const ValueSurface& a, const ValueSurface& b) {
    if (!(a.grid() == b.grid())) throw DomainError("surfaces are on different grids");
    if (!a.spec().same_apart_from_epsilon(b.spec())) {
        throw DomainError("surfaces differ in more than epsilon");
    }
}

constexpr Mode kModes[] = {Mode::Closed, Mode::Open};

const char* status_text(CheckStatus status) {
    switch (status) {
        case CheckStatus::Passed: return "true";
        case CheckStatus::Failed: return "false";
        case CheckStatus::Skipped: return "skipped";
    }
    return "?";
}

}  // namespace

CheckReport CheckReport::skipped(std::string name, std::string why) {
    CheckReport report;
    report.name = std::move(name);
    report.status = CheckStatus::Skipped;
    report.detail = std::move(why);
    return report;
}

double common_scale(std::span<const ValueSurface> surfaces) noexcept {
    double scale = 1.0;
    for (const auto& s : surfaces) scale = std::max(scale, s.scale());
    return scale;
}

CheckReport check_monotonicity(std::span<const ValueSurface> surfaces) {
    const std::string name = "epsilon_monotonicity";
    if (surfaces.size() < 2) return CheckReport::skipped(name, "needs at least two surfaces");
    for (std::size_t i = 1; i < surfaces.size(); ++i) {
        require_compatible(surfaces[0], surfaces[i]);
        if (surfaces[i].spec().epsilon < surfaces[i - 1].spec().epsilon) {
            throw DomainError("surfaces must be sorted by epsilon ascending");
        }
    }

    Worst worst;
    for (std::size_t i = 1; i < surfaces.size(); ++i) {
        const auto& low = surfaces[i - 1];
        const auto& high = surfaces[i];
        for (Mode mode : kModes) {
            const auto a = low.values(mode);
            const auto b = high.values(mode);
            for (std::size_t idx = 0; idx < a.size(); ++idx) {
                worst.offer(b[idx] - a[idx], high, idx / low.nodes(), idx % low.nodes(), mode);
            }
        }
    }
    return finish(name, worst, kStructuralTol * common_scale(surfaces));
}

CheckReport check_convexity(const ValueSurface& surface) {
    Worst worst;
    const std::size_t n = surface.nodes();
    for (Mode mode : kModes) {
        for (std::size_t k = 0; k < surface.levels(); ++k) {
            const auto v = surface.level(mode, k);
            for (std::size_t j = 1; j + 1 < n; ++j) {
                worst.offer(-(v[j - 1] - 2.0 * v[j] + v[j + 1]), surface, k, j, mode);
            }
        }
    }
    return finish("convexity", worst, kConvexityTol * surface.scale());
}

CheckReport check_feasibility(const ValueSurface& surface) {
    const auto& spec = surface.spec();
    const double tol = kFeasibilityTol * surface.scale();
    Worst worst;
    for (std::size_t k = 0; k < surface.levels(); ++k) {
        const auto v0 = surface.level(Mode::Closed, k);
        const auto v1 = surface.level(Mode::Open, k);
        for (std::size_t j = 0; j < surface.nodes(); ++j) {
            worst.offer((v1[j] - spec.c01) - v0[j], surface, k, j, Mode::Closed);
            worst.offer(-v0[j], surface, k, j, Mode::Closed);
            worst.offer((v0[j] - spec.c10) - v1[j], surface, k, j, Mode::Open);
            worst.offer(-spec.c10 - v1[j], surface, k, j, Mode::Open);
        }
    }
    return finish("feasibility", worst, tol);
}

CheckReport check_terminal(const ValueSurface& surface) {
    Worst worst;
    worst.value = 0.0;
    worst.location = CheckLocation{surface.spec().horizon, surface.x(0), -1, surface.spec().epsilon};
    const std::size_t last = surface.levels() - 1;
    for (Mode mode : kModes) {
        const auto v = surface.level(mode, last);
        for (std::size_t j = 0; j < v.size(); ++j) {
            worst.offer(std::abs(v[j]), surface, last, j, mode);
        }
    }
    return finish("terminal_condition", worst, 0.0);
}

ConvergenceReport check_convergence(const ValueSurface& surface0,
                                    std::span<const ValueSurface> surfaces) {
    ConvergenceReport out;
    if (surfaces.empty()) {
        out.report = CheckReport::skipped("convergence_bound", "no epsilon > 0 surfaces");
        return out;
    }
    double scale = surface0.scale();
    for (const auto& s : surfaces) {
        require_compatible(surface0, s);
        scale = std::max(scale, s.scale());
    }

    const auto& spec = surface0.spec();
    Worst worst;
    std::ostringstream detail;
    detail.precision(6);
    detail << "sup-gap:";
    for (const auto& s : surfaces) {
        const double eps = s.spec().epsilon;
        double sup_gap = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < s.levels(); ++k) {
            const double bound = convergence_bound(s.time(k), spec.horizon, eps, spec.psi1_slope);
            for (Mode mode : kModes) {
                const auto full = surface0.level(mode, k);
                const auto partial = s.level(mode, k);
                for (std::size_t j = 0; j < s.nodes(); ++j) {
                    const double gap = full[j] - partial[j];
                    sup_gap = std::max(sup_gap, gap);
                    worst.offer(-gap, s, k, j, mode);
                    worst.offer(gap - bound, s, k, j, mode);
                }
            }
        }
        out.gaps.push_back(GapSample{eps, sup_gap});
        detail << " eps=" << eps << ":" << sup_gap;
    }
    out.report = finish("convergence_bound", worst, kStructuralTol * scale, detail.str());
    return out;
}

const std::array<ReferenceValue, 18>& table2_reference() {
    static const std::array<ReferenceValue, 18> table = {{
        {0.0, -0.5, 0.0625, 0.7680}, {0.0, 0.0, 0.0625, 2.2860}, {0.0, 0.5, 0.0625, 5.6481},
        {0.5, -0.5, 0.0625, 0.1814}, {0.5, 0.0, 0.0625, 0.8567}, {0.5, 0.5, 0.0625, 2.6015},
        {0.0, -0.5, 1.0, 0.0631},    {0.0, 0.0, 1.0, 0.7898},    {0.0, 0.5, 1.0, 5.0367},
        {0.5, -0.5, 1.0, 0.0349},    {0.5, 0.0, 1.0, 0.5069},    {0.5, 0.5, 1.0, 2.5097},
        {0.0, -0.5, 8.0, -0.001},    {0.0, 0.0, 8.0, 0.0575},    {0.0, 0.5, 8.0, 5.0000},
        {0.5, -0.5, 8.0, -0.001},    {0.5, 0.0, 8.0, 0.0396},    {0.5, 0.5, 8.0, 2.5000},
    }};
    return table;
}

double table2_tolerance(double reference) noexcept {
    return std::max(0.01, 0.01 * std::abs(reference));
}

Table2Comparison compare_table2(std::span<const ValueSurface> surfaces) {
    Table2Comparison out;
    double worst = -std::numeric_limits<double>::infinity();
    CheckLocation where;
    std::size_t failures = 0;
    for (const auto& ref : table2_reference()) {
        const auto match = std::find_if(surfaces.begin(), surfaces.end(), [&](const ValueSurface& s) {
            return std::abs(s.spec().epsilon - ref.epsilon) <= 1e-12 * ref.epsilon;
        });
        if (match == surfaces.end()) {
            throw DomainError("compare_table2: no surface for epsilon " + std::to_string(ref.epsilon));
        }
        Table2Row row;
        row.reference = ref;
        row.computed = value_at(*match, ref.t, ref.m, Mode::Open);
        row.abs_diff = std::abs(row.computed - ref.value);
        row.tolerance = table2_tolerance(ref.value);
        row.pass = row.abs_diff <= row.tolerance;
        failures += row.pass ? 0 : 1;
        if (row.abs_diff - row.tolerance > worst) {
            worst = row.abs_diff - row.tolerance;
            where = CheckLocation{ref.t, ref.m, index(Mode::Open), ref.epsilon};
        }
        out.rows.push_back(row);
    }
    out.report.name = "table2";
    out.report.worst_violation = worst;
    out.report.tolerance = 0.0;
    out.report.location = where;
    out.report.status = failures == 0 ? CheckStatus::Passed : CheckStatus::Failed;
    out.report.detail = std::to_string(out.rows.size() - failures) + "/" +
                        std::to_string(out.rows.size()) + " entries within tolerance";
    return out;
}

CheckReport check_self_convergence(const ValueSurface& coarse, const ValueSurface& fine,
                                   std::span<const QueryPoint> queries) {
    if (queries.empty()) return CheckReport::skipped("self_convergence", "no query points");
    const double scale = std::max(coarse.scale(), fine.scale());
    CheckReport report;
    report.name = "self_convergence";
    report.worst_violation = -std::numeric_limits<double>::infinity();
    for (const auto& q : queries) {
        const double diff =
            std::abs(value_at(fine, q.t, q.m, q.mode) - value_at(coarse, q.t, q.m, q.mode));
        if (diff > report.worst_violation) {
            report.worst_violation = diff;
            report.location = CheckLocation{q.t, q.m, index(q.mode), coarse.spec().epsilon};
        }
    }
    report.tolerance = kStructuralTol * scale;
    // Strict: values must move by less than the tolerance.
    report.status =
        report.worst_violation < report.tolerance ? CheckStatus::Passed : CheckStatus::Failed;
    return report;
}

void write_reports_csv(std::ostream& out, std::span<const CheckReport> reports) {
    std::ostringstream buffer;
    buffer.precision(9);
    buffer << "check,passed,worst_violation,tolerance,t,m,mode,epsilon\n";
    for (const auto& r : reports) {
        buffer << r.name << ',' << status_text(r.status) << ',';
        if (r.status == CheckStatus::Skipped) {
            buffer << ",,,,,\n";
            continue;
        }
        buffer << r.worst_violation << ',' << r.tolerance << ',' << r.location.t << ','
               << r.location.m << ',';
        if (r.location.mode >= 0) buffer << r.location.mode;
        buffer << ',' << r.location.epsilon << '\n';
    }
    out << buffer.str();
}

void write_summary(std::ostream& out, std::span<const CheckReport> reports) {
    std::size_t passed = 0, failed = 0, skipped = 0;
    std::ostringstream buffer;
    buffer.precision(6);
    for (const auto& r : reports) {
        switch (r.status) {
            case CheckStatus::Passed: ++passed; buffer << "[PASS] "; break;
            case CheckStatus::Failed: ++failed; buffer << "[FAIL] "; break;
            case CheckStatus::Skipped: ++skipped; buffer << "[SKIP] "; break;
        }
        buffer << r.name;
        if (r.status != CheckStatus::Skipped) {
            buffer << "  worst=" << r.worst_violation << " tol=" << r.tolerance << " at (t="
                   << r.location.t << ", m=" << r.location.m;
            if (r.location.mode >= 0) buffer << ", mode=" << r.location.mode;
            buffer << ", eps=" << r.location.epsilon << ")";
        }
        if (!r.detail.empty()) buffer << "  " << r.detail;
        buffer << '\n';
    }
    buffer << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    out << buffer.str();
}

}  // namespace obswitch
