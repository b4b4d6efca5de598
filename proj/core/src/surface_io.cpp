#include "obswitch/surface_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "obswitch/error.hpp"

namespace obswitch {

namespace {

constexpr const char* kHeader = "t,m,v0,v1,in_S0,in_S1";

std::vector<std::size_t> strided_indices(std::size_t count, std::size_t stride) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < count; i += stride) out.push_back(i);
    return out;
}

double parse_field(const std::string& text, std::size_t line) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw DomainError("surface CSV line " + std::to_string(line) + ": bad number '" + text + "'");
    }
    return value;
}

/// Sorted distinct values; checks they form a uniform lattice.
std::vector<double> lattice(std::vector<double> values, const char* axis) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.size() < 2) throw DomainError(std::string("surface CSV: too few distinct ") + axis);
    const double step = (values.back() - values.front()) / static_cast<double>(values.size() - 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double expected = values.front() + step * static_cast<double>(i);
        if (std::abs(values[i] - expected) > 1e-6 * std::max(1.0, std::abs(step))) {
            throw DomainError(std::string("surface CSV: non-uniform ") + axis + " lattice");
        }
    }
    return values;
}

}  // namespace

void write_surface_csv(std::ostream& out, const ValueSurface& surface,
                       const SwitchingRegions& regions, std::size_t stride) {
    const Grid& grid = surface.grid();
    if (stride == 0 || grid.n_t % stride != 0 || (grid.n_x - 1) % stride != 0) {
        throw DomainError("surface stride must divide both n_t and n_x - 1");
    }
    if (!(regions.grid == grid)) throw DomainError("regions and surface grids differ");

    std::ostringstream buffer;
    buffer.precision(9);
    buffer << kHeader << '\n';
    for (std::size_t k : strided_indices(surface.levels(), stride)) {
        const double t = surface.time(k);
        for (std::size_t j : strided_indices(surface.nodes(), stride)) {
            buffer << t << ',' << surface.x(j) << ',' << surface.at(Mode::Closed, k, j) << ','
                   << surface.at(Mode::Open, k, j) << ','
                   << (regions.contains(Mode::Closed, k, j) ? 1 : 0) << ','
                   << (regions.contains(Mode::Open, k, j) ? 1 : 0) << '\n';
        }
    }
    out << buffer.str();
}

ValueSurface read_surface_csv(std::istream& in, const ProblemSpec& spec) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader) {
        throw DomainError("surface CSV: missing header '" + std::string(kHeader) + "'");
    }

    struct Row {
        double t, m, v0, v1;
    };
    std::vector<Row> rows;
    std::vector<double> ts, ms;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 6) {
            throw DomainError("surface CSV line " + std::to_string(line_no) + ": expected 6 fields");
        }
        Row row{parse_field(fields[0], line_no), parse_field(fields[1], line_no),
                parse_field(fields[2], line_no), parse_field(fields[3], line_no)};
        rows.push_back(row);
        ts.push_back(row.t);
        ms.push_back(row.m);
    }

    const auto times = lattice(std::move(ts), "t");
    const auto nodes = lattice(std::move(ms), "m");
    if (std::abs(times.front()) > 1e-12 || std::abs(times.back() - spec.horizon) > 1e-6) {
        throw DomainError("surface CSV: time column must span [0, T]");
    }
    if (rows.size() != times.size() * nodes.size()) {
        throw DomainError("surface CSV: row count does not match the lattice");
    }

    Grid grid;
    grid.x_min = nodes.front();
    grid.x_max = nodes.back();
    grid.n_x = nodes.size();
    grid.n_t = times.size() - 1;

    std::vector<double> v0(rows.size()), v1(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const std::size_t k = r / grid.n_x;
        const std::size_t j = r % grid.n_x;
        const double t_tol = 1e-6 * spec.horizon / static_cast<double>(grid.n_t);
        const double x_tol = 1e-6 * grid.dx();
        if (std::abs(rows[r].t - times[k]) > t_tol || std::abs(rows[r].m - nodes[j]) > x_tol) {
            throw DomainError("surface CSV: rows are not ordered by (time level, node)");
        }
        v0[r] = rows[r].v0;
        v1[r] = rows[r].v1;
    }
    return ValueSurface(grid, spec, std::move(v0), std::move(v1));
}

}  // namespace obswitch
