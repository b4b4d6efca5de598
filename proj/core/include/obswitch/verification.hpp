#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "obswitch/vi_solver.hpp"

namespace obswitch {

enum class CheckStatus { Passed, Failed, Skipped };

struct CheckLocation {
    double t = 0.0;
    double m = 0.0;
    int mode = -1;  // -1 when the check is not tied to a mode
    double epsilon = 0.0;
};

/// passed() <=> worst_violation <= tolerance (unless skipped).
struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::Skipped;
    double worst_violation = 0.0;
    double tolerance = 0.0;
    CheckLocation location;
    std::string detail;

    bool passed() const noexcept { return status == CheckStatus::Passed; }
    bool failed() const noexcept { return status == CheckStatus::Failed; }

    static CheckReport skipped(std::string name, std::string why);
};

/// 1 + max node |v| across all given surfaces.
double common_scale(std::span<const ValueSurface> surfaces) noexcept;

/// Node-wise v^{eps2} <= v^{eps1} for adjacent pairs, surfaces sorted by
/// epsilon ascending. Tolerance 1e-3 * scale. Skipped with fewer than two
/// surfaces. Throws DomainError on mismatched grids/specs or unsorted epsilons.
CheckReport check_monotonicity(std::span<const ValueSurface> surfaces);

/// Largest negative second spatial difference over interior nodes, both
/// modes. Tolerance 1e-4 * scale.
CheckReport check_convexity(const ValueSurface& surface);

/// Obstacle feasibility and the sandwich -c10 <= v1 - v0 <= c01, v0 >= 0,
/// v1 >= -c10, each with tol = 1e-8 * scale.
CheckReport check_feasibility(const ValueSurface& surface);

/// max |v_i(T, .)| must be exactly 0.
CheckReport check_terminal(const ValueSurface& surface);

/// Sup-gap of v^0 - v^eps at one noise level.
struct GapSample {
    double epsilon = 0.0;
    double sup_gap = 0.0;
};

struct ConvergenceReport {
    CheckReport report;
    std::vector<GapSample> gaps;  // same order as the input surfaces
};

/// 0 <= v^0 - v^eps <= convergence_bound(t, T, eps, slope) node-wise, both
/// sides with tolerance 1e-3 * scale.
ConvergenceReport check_convergence(const ValueSurface& surface0,
                                    std::span<const ValueSurface> surfaces);

/// Reference values of v1 at (t, m) for eps in {2^-4, 1, 2^3}.
struct ReferenceValue {
    double t;
    double m;
    double epsilon;
    double value;
};
const std::array<ReferenceValue, 18>& table2_reference();

struct Table2Row {
    ReferenceValue reference;
    double computed = 0.0;
    double abs_diff = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct Table2Comparison {
    std::vector<Table2Row> rows;
    /// worst_violation = max(abs_diff - entry tolerance); tolerance = 0.
    CheckReport report;
};

/// Per-entry tolerance: max(0.01, 0.01 |reference|).
double table2_tolerance(double reference) noexcept;

/// Compare mode-1 values against the reference table. `surfaces` must contain
/// one surface per reference epsilon (any order; matched by spec().epsilon).
Table2Comparison compare_table2(std::span<const ValueSurface> surfaces);

/// Query point for the self-convergence check.
struct QueryPoint {
    double t = 0.0;
    double m = 0.0;
    Mode mode = Mode::Open;

    bool operator==(const QueryPoint&) const = default;
};

/// |value_at(fine) - value_at(coarse)| < 1e-3 * scale at every query point.
CheckReport check_self_convergence(const ValueSurface& coarse, const ValueSurface& fine,
                                   std::span<const QueryPoint> queries);

/// CSV `check,passed,worst_violation,tolerance,t,m,mode,epsilon`; the passed
/// column holds true, false or skipped.
void write_reports_csv(std::ostream& out, std::span<const CheckReport> reports);

/// Human-readable block, one line per report plus a totals line.
void write_summary(std::ostream& out, std::span<const CheckReport> reports);

}  // namespace obswitch
