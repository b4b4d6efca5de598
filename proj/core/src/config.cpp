#include "obswitch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "obswitch/error.hpp"

namespace obswitch {

namespace {

using LineMap = std::map<std::string, std::size_t>;

const std::set<std::string, std::less<>> kKeys = {
    "epsilon_list", "T",   "c01", "c10",        "psi1_slope", "psi1_intercept", "x_min", "x_max",
    "n_x",          "n_t", "query_points",      "n_paths",    "n_steps",        "seed",  "output_dir"};

std::string_view trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(trim(text.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

template <class T>
T parse_number(std::string_view text, const std::string& key, std::size_t line) {
    T value{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (text.empty() || ec != std::errc() || ptr != end) {
        throw ConfigError(key, line, "cannot parse '" + std::string(text) + "' as a number");
    }
    return value;
}

std::size_t line_of(const LineMap& lines, const std::string& key) {
    const auto it = lines.find(key);
    return it == lines.end() ? 0 : it->second;
}

void validate_config(const ExperimentConfig& c, const LineMap& lines) {
    auto fail = [&](const std::string& key, const std::string& message) {
        throw ConfigError(key, line_of(lines, key), message);
    };

    if (c.epsilons.empty()) fail("epsilon_list", "needs at least one noise level");
    for (std::size_t i = 0; i < c.epsilons.size(); ++i) {
        if (!(c.epsilons[i] >= 0.0) || !std::isfinite(c.epsilons[i])) {
            fail("epsilon_list", "noise levels must be finite and >= 0");
        }
        if (i > 0 && !(c.epsilons[i] > c.epsilons[i - 1])) {
            fail("epsilon_list", "noise levels must be sorted ascending and distinct");
        }
    }
    if (!(c.spec.horizon > 0.0) || !std::isfinite(c.spec.horizon)) fail("T", "horizon must be > 0");
    if (!(c.spec.c01 > 0.0) || !std::isfinite(c.spec.c01)) fail("c01", "costs must be positive");
    if (!(c.spec.c10 > 0.0) || !std::isfinite(c.spec.c10)) fail("c10", "costs must be positive");
    if (!std::isfinite(c.spec.psi1_slope)) fail("psi1_slope", "must be finite");
    if (!std::isfinite(c.spec.psi1_intercept)) fail("psi1_intercept", "must be finite");
    if (!std::isfinite(c.grid.x_min)) fail("x_min", "must be finite");
    if (!std::isfinite(c.grid.x_max)) fail("x_max", "must be finite");
    if (!(c.grid.x_min < c.grid.x_max)) fail("x_max", "needs x_min < x_max");
    if (c.grid.n_x < 3) fail("n_x", "needs at least 3 spatial nodes");
    if (c.grid.n_t < 1) fail("n_t", "needs at least 1 time step");
    for (const auto& q : c.query_points) {
        if (!(q.t >= 0.0 && q.t <= c.spec.horizon)) fail("query_points", "t outside [0, T]");
        if (!(q.m >= c.grid.x_min && q.m <= c.grid.x_max)) {
            fail("query_points", "m outside [x_min, x_max]");
        }
    }
    if (c.mc.n_paths < 100) fail("n_paths", "needs at least 100 paths");
    if (c.output_dir.empty()) fail("output_dir", "must not be empty");
}

std::string format_double(double value) {
    std::ostringstream out;
    out.precision(17);
    out << value;
    return out.str();
}

}  // namespace

std::vector<double> default_epsilons() {
    std::vector<double> out = {0.0};
    for (int p = -4; p <= 3; ++p) out.push_back(std::ldexp(1.0, p));
    return out;
}

std::vector<QueryPoint> default_query_points() {
    std::vector<QueryPoint> out;
    for (double t : {0.0, 0.5}) {
        for (double m : {-0.5, 0.0, 0.5}) out.push_back(QueryPoint{t, m, Mode::Open});
    }
    return out;
}

ProblemSpec ExperimentConfig::spec_for(double epsilon) const {
    ProblemSpec out = spec;
    out.epsilon = epsilon;
    return out;
}

void ExperimentConfig::validate() const { validate_config(*this, {}); }

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig config;
    config.epsilons = default_epsilons();
    config.query_points = default_query_points();
    LineMap lines;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        std::string_view line = text.substr(start, end == std::string_view::npos ? end : end - start);
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", line_no, "expected 'key = value'");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (!kKeys.contains(key)) throw ConfigError(key, line_no, "unknown key");
        if (lines.contains(key)) throw ConfigError(key, line_no, "duplicate key");
        lines[key] = line_no;

        if (key == "epsilon_list") {
            config.epsilons.clear();
            for (auto part : split(value, ',')) {
                config.epsilons.push_back(parse_number<double>(part, key, line_no));
            }
        } else if (key == "query_points") {
            config.query_points.clear();
            if (!value.empty()) {
                for (auto part : split(value, ',')) {
                    const auto fields = split(part, ':');
                    if (fields.size() != 3) {
                        throw ConfigError(key, line_no, "query point must be t:m:mode");
                    }
                    const int mode = parse_number<int>(fields[2], key, line_no);
                    if (mode != 0 && mode != 1) throw ConfigError(key, line_no, "mode must be 0 or 1");
                    config.query_points.push_back(QueryPoint{parse_number<double>(fields[0], key, line_no),
                                                             parse_number<double>(fields[1], key, line_no),
                                                             mode_from_int(mode)});
                }
            }
        } else if (key == "T") {
            config.spec.horizon = parse_number<double>(value, key, line_no);
        } else if (key == "c01") {
            config.spec.c01 = parse_number<double>(value, key, line_no);
        } else if (key == "c10") {
            config.spec.c10 = parse_number<double>(value, key, line_no);
        } else if (key == "psi1_slope") {
            config.spec.psi1_slope = parse_number<double>(value, key, line_no);
        } else if (key == "psi1_intercept") {
            config.spec.psi1_intercept = parse_number<double>(value, key, line_no);
        } else if (key == "x_min") {
            config.grid.x_min = parse_number<double>(value, key, line_no);
        } else if (key == "x_max") {
            config.grid.x_max = parse_number<double>(value, key, line_no);
        } else if (key == "n_x") {
            config.grid.n_x = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "n_t") {
            config.grid.n_t = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "n_paths") {
            config.mc.n_paths = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "n_steps") {
            config.mc.n_steps = parse_number<std::size_t>(value, key, line_no);
        } else if (key == "seed") {
            config.mc.seed = parse_number<std::uint64_t>(value, key, line_no);
        } else if (key == "output_dir") {
            config.output_dir = std::string(value);
        }
    }

    validate_config(config, lines);
    return config;
}

std::string serialize_config(const ExperimentConfig& config) {
    std::ostringstream out;
    out << "epsilon_list = ";
    for (std::size_t i = 0; i < config.epsilons.size(); ++i) {
        out << (i ? ", " : "") << format_double(config.epsilons[i]);
    }
    out << "\nT = " << format_double(config.spec.horizon)
        << "\nc01 = " << format_double(config.spec.c01)
        << "\nc10 = " << format_double(config.spec.c10)
        << "\npsi1_slope = " << format_double(config.spec.psi1_slope)
        << "\npsi1_intercept = " << format_double(config.spec.psi1_intercept)
        << "\nx_min = " << format_double(config.grid.x_min)
        << "\nx_max = " << format_double(config.grid.x_max) << "\nn_x = " << config.grid.n_x
        << "\nn_t = " << config.grid.n_t << "\nquery_points = ";
    for (std::size_t i = 0; i < config.query_points.size(); ++i) {
        const auto& q = config.query_points[i];
        out << (i ? ", " : "") << format_double(q.t) << ':' << format_double(q.m) << ':'
            << index(q.mode);
    }
    out << "\nn_paths = " << config.mc.n_paths << "\nn_steps = " << config.mc.n_steps
        << "\nseed = " << config.mc.seed << "\noutput_dir = " << config.output_dir << '\n';
    return out.str();
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", 0, "cannot read config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace obswitch
