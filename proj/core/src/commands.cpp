#include "obswitch/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "obswitch/error.hpp"
#include "obswitch/parallel.hpp"
#include "obswitch/strategy_sim.hpp"
#include "obswitch/surface_io.hpp"
#include "obswitch/verification.hpp"
#include "obswitch/vi_solver.hpp"

namespace obswitch {

namespace fs = std::filesystem;

namespace {

std::string fmt9(double value) {
    std::ostringstream out;
    out.precision(9);
    out << value;
    return out.str();
}

std::vector<ValueSurface> solve_all(const ExperimentConfig& config,
                                    const std::vector<double>& epsilons) {
    std::vector<std::optional<ValueSurface>> slots(epsilons.size());
    parallel_for(epsilons.size(), [&](std::size_t i) {
        slots[i].emplace(solve(config.spec_for(epsilons[i]), config.grid));
    });
    std::vector<ValueSurface> out;
    out.reserve(slots.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

std::string surface_csv(const ValueSurface& surface, std::size_t stride) {
    std::ostringstream out;
    write_surface_csv(out, surface, extract_regions(surface), stride);
    return out.str();
}

fs::path prepare_output(const ExperimentConfig& config) {
    fs::path dir(config.output_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

std::size_t nearest_level(const Grid& grid, double horizon, double t) {
    const double level = std::round(t / grid.dt(horizon));
    return static_cast<std::size_t>(std::clamp(level, 0.0, static_cast<double>(grid.n_t)));
}

bool is_baseline(const ProblemSpec& spec) {
    return spec.same_apart_from_epsilon(ProblemSpec::baseline(0.0));
}

bool contains_epsilon(const std::vector<double>& epsilons, double eps) {
    return std::any_of(epsilons.begin(), epsilons.end(),
                       [&](double e) { return std::abs(e - eps) <= 1e-12 * std::max(1.0, eps); });
}

/// Run a check; an exception becomes a failed report rather than aborting the battery.
template <class Fn>
CheckReport guarded(const std::string& name, Fn&& fn) {
    try {
        return fn();
    } catch (const std::exception& e) {
        CheckReport report;
        report.name = name;
        report.status = CheckStatus::Failed;
        report.worst_violation = std::numeric_limits<double>::infinity();
        report.detail = std::string("error: ") + e.what();
        return report;
    }
}

void log_elapsed(std::ostream& log, const char* what, std::chrono::steady_clock::time_point since) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - since)
                        .count();
    log << what << " in " << ms << " ms\n";
}

}  // namespace

std::string surface_file_name(double epsilon) { return "surface_eps_" + fmt9(epsilon) + ".csv"; }

void write_file_atomically(const std::string& path, const std::string& contents) {
    const std::string temp = path + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open '" + temp + "' for writing");
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("write to '" + temp + "' failed");
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) throw std::runtime_error("cannot rename '" + temp + "' to '" + path + "': " + ec.message());
}

ExperimentConfig apply_overrides(ExperimentConfig config, const CommandOptions& options) {
    if (options.out_dir) config.output_dir = *options.out_dir;
    if (options.seed) config.mc.seed = *options.seed;
    if (options.n_x) config.grid.n_x = *options.n_x;
    if (options.n_t) config.grid.n_t = *options.n_t;
    config.validate();
    return config;
}

int cmd_solve(const ExperimentConfig& raw, const CommandOptions& options, std::ostream& log) {
    const auto config = apply_overrides(raw, options);
    const auto dir = prepare_output(config);
    const double eps = config.epsilons.front();

    const auto start = std::chrono::steady_clock::now();
    const auto surface = solve(config.spec_for(eps), config.grid);
    log_elapsed(log, "solved", start);

    for (const auto& q : config.query_points) {
        log << "v" << index(q.mode) << "(t=" << q.t << ", m=" << q.m << ") = "
            << fmt9(value_at(surface, q.t, q.m, q.mode)) << "  [eps=" << eps << "]\n";
    }
    const auto path = dir / surface_file_name(eps);
    write_file_atomically(path.string(), surface_csv(surface, options.stride));
    log << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_sweep(const ExperimentConfig& raw, const CommandOptions& options, std::ostream& log) {
    const auto config = apply_overrides(raw, options);
    const auto dir = prepare_output(config);

    const auto start = std::chrono::steady_clock::now();
    const auto surfaces = solve_all(config, config.epsilons);
    log_elapsed(log, "solved sweep", start);

    std::ostringstream figure;
    figure.precision(9);
    figure << "epsilon,t,m,v1\n";
    std::vector<std::size_t> levels = {nearest_level(config.grid, config.spec.horizon, 0.0)};
    if (0.5 <= config.spec.horizon) levels.push_back(nearest_level(config.grid, config.spec.horizon, 0.5));
    for (const auto& surface : surfaces) {
        for (std::size_t k : levels) {
            for (std::size_t j = 0; j < surface.nodes(); j += options.stride) {
                figure << surface.spec().epsilon << ',' << surface.time(k) << ',' << surface.x(j)
                       << ',' << surface.at(Mode::Open, k, j) << '\n';
            }
        }
    }

    for (const auto& surface : surfaces) {
        const auto path = dir / surface_file_name(surface.spec().epsilon);
        write_file_atomically(path.string(), surface_csv(surface, options.stride));
        log << "wrote " << path.string() << '\n';
    }
    const auto figure_path = dir / "figure1.csv";
    write_file_atomically(figure_path.string(), figure.str());
    log << "wrote " << figure_path.string() << '\n';
    return 0;
}

int cmd_simulate(const ExperimentConfig& raw, const CommandOptions& options, std::ostream& log) {
    const auto config = apply_overrides(raw, options);
    const auto dir = prepare_output(config);

    std::ostringstream csv;
    csv.precision(9);
    csv << "epsilon,t0,m0,mode,mean,std_err,n_paths,seed\n";
    for (double eps : config.epsilons) {
        const auto spec = config.spec_for(eps);
        const auto surface = solve(spec, config.grid);
        const auto regions = extract_regions(surface);
        for (const auto& q : config.query_points) {
            if (q.t >= spec.horizon) {
                log << "skipping query at t = T (no remaining decisions)\n";
                continue;
            }
            const std::size_t steps = config.mc.n_steps > 0
                                          ? config.mc.n_steps
                                          : aligned_steps(config.grid, spec.horizon, q.t);
            const auto est = estimate_value(spec, regions, q.t, q.m, q.mode, config.mc.n_paths,
                                            steps, config.mc.seed);
            csv << eps << ',' << q.t << ',' << q.m << ',' << index(q.mode) << ',' << est.mean << ','
                << est.std_err << ',' << est.n_paths << ',' << config.mc.seed << '\n';
            log << "eps=" << eps << " (t0=" << q.t << ", m0=" << q.m << ", mode=" << index(q.mode)
                << "): MC " << fmt9(est.mean) << " +/- " << fmt9(est.std_err) << ", PDE "
                << fmt9(value_at(surface, q.t, q.m, q.mode)) << '\n';
        }
    }
    const auto path = dir / "estimates.csv";
    write_file_atomically(path.string(), csv.str());
    log << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_verify(const ExperimentConfig& raw, const CommandOptions& options, std::ostream& log) {
    const auto config = apply_overrides(raw, options);
    const auto dir = prepare_output(config);

    std::vector<ValueSurface> surfaces;
    if (!options.surface_files.empty()) {
        if (options.surface_files.size() != config.epsilons.size()) {
            throw DomainError("verify: need one surface file per configured epsilon");
        }
        for (std::size_t i = 0; i < options.surface_files.size(); ++i) {
            std::ifstream in(options.surface_files[i], std::ios::binary);
            if (!in) throw std::runtime_error("cannot read '" + options.surface_files[i] + "'");
            surfaces.push_back(read_surface_csv(in, config.spec_for(config.epsilons[i])));
        }
    } else {
        surfaces = solve_all(config, config.epsilons);
    }

    std::vector<CheckReport> reports;
    for (const auto& s : surfaces) {
        reports.push_back(guarded("terminal_condition", [&] { return check_terminal(s); }));
        reports.push_back(guarded("feasibility", [&] { return check_feasibility(s); }));
        reports.push_back(guarded("convexity", [&] { return check_convexity(s); }));
    }
    reports.push_back(guarded("epsilon_monotonicity", [&] { return check_monotonicity(surfaces); }));
    if (surfaces.size() >= 2 && config.epsilons.front() == 0.0) {
        reports.push_back(guarded("convergence_bound", [&] {
            return check_convergence(surfaces.front(),
                                     std::span<const ValueSurface>(surfaces).subspan(1))
                .report;
        }));
    } else {
        reports.push_back(CheckReport::skipped("convergence_bound",
                                               "needs epsilon = 0 plus at least one epsilon > 0"));
    }
    const bool table2_ready = is_baseline(config.spec) && contains_epsilon(config.epsilons, 0.0625) &&
                              contains_epsilon(config.epsilons, 1.0) &&
                              contains_epsilon(config.epsilons, 8.0);
    if (table2_ready) {
        reports.push_back(guarded("table2", [&] { return compare_table2(surfaces).report; }));
    } else {
        reports.push_back(CheckReport::skipped(
            "table2", "needs the baseline problem and epsilon in {0.0625, 1, 8}"));
    }

    std::ostringstream csv, summary;
    write_reports_csv(csv, reports);
    write_summary(summary, reports);
    write_file_atomically((dir / "checks.csv").string(), csv.str());
    write_file_atomically((dir / "summary.txt").string(), summary.str());
    log << summary.str();

    const bool any_failed =
        std::any_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.failed(); });
    return any_failed ? 1 : 0;
}

int cmd_table2(const ExperimentConfig& raw, const CommandOptions& options, std::ostream& log) {
    const auto config = apply_overrides(raw, options);
    const auto dir = prepare_output(config);

    const auto start = std::chrono::steady_clock::now();
    const auto surfaces = solve_all(config, {0.0625, 1.0, 8.0});
    log_elapsed(log, "solved", start);
    const auto comparison = compare_table2(surfaces);

    std::ostringstream csv;
    csv.precision(9);
    csv << "t,m,epsilon,paper,computed,abs_diff,tolerance,pass\n";
    for (const auto& row : comparison.rows) {
        csv << row.reference.t << ',' << row.reference.m << ',' << row.reference.epsilon << ','
            << row.reference.value << ',' << row.computed << ',' << row.abs_diff << ','
            << row.tolerance << ',' << (row.pass ? "true" : "false") << '\n';
        log << (row.pass ? "[PASS] " : "[FAIL] ") << "eps=" << row.reference.epsilon
            << " t=" << row.reference.t << " m=" << row.reference.m
            << " reference=" << row.reference.value << " computed=" << fmt9(row.computed)
            << " |diff|=" << fmt9(row.abs_diff) << " tol=" << row.tolerance << '\n';
    }
    write_file_atomically((dir / "table2.csv").string(), csv.str());
    log << comparison.report.detail << '\n';
    return comparison.report.passed() ? 0 : 1;
}

}  // namespace obswitch
