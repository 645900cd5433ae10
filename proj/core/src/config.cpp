#include "nevlab/config.hpp"
#include "nevlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace nevlab {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "' is not a number: '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config field '" + key + "' is not an integer: '" + v + "'");
    }
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : v) {
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            if (!trim(cur).empty()) out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(trim(cur));
    return out;
}

} // namespace

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_grid_min = false, saw_grid_max = false;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("config field '" + key + "' has an empty value");

        if (key == "surface") cfg.surface_spec = value;
        else if (key == "function") cfg.function_spec = value;
        else if (key == "targets") cfg.target_specs = split_list(value);
        else if (key == "r0") cfg.r0 = parse_double(key, value);
        else if (key == "grid.min") { cfg.grid.r_min = parse_double(key, value); saw_grid_min = true; }
        else if (key == "grid.max") { cfg.grid.r_max = parse_double(key, value); saw_grid_max = true; }
        else if (key == "grid.points") cfg.grid.points = static_cast<int>(parse_long(key, value));
        else if (key == "grid.spacing") {
            if (value == "geometric") cfg.grid.geometric = true;
            else if (value == "linear") cfg.grid.geometric = false;
            else throw ConfigError("config field 'grid.spacing' must be geometric or linear");
        }
        else if (key == "gamma") {
            if (value != "one" && value != "inverse-gap")
                throw ConfigError("config field 'gamma' must be one or inverse-gap");
            cfg.gamma_kind = value;
        }
        else if (key == "delta") cfg.delta = parse_double(key, value);
        else if (key == "tol") cfg.tol = parse_double(key, value);
        else if (key == "zero-tol") cfg.zero_tol = parse_double(key, value);
        else if (key == "seed") cfg.seed = static_cast<uint64_t>(parse_long(key, value));
        else if (key == "threads") cfg.threads = static_cast<int>(parse_long(key, value));
        else if (key == "out") cfg.out_dir = value;
        else if (key == "checks") cfg.checks = split_list(value);
        else if (key == "fmt.bound") cfg.fmt_bound = parse_double(key, value);
        else if (key == "smt.coverage") cfg.smt_coverage = parse_double(key, value);
        else if (key == "smt.curvature-bound") cfg.curvature_bound = parse_double(key, value);
        else if (key == "exceptional.budget") cfg.exceptional_budget = parse_double(key, value);
        else if (key == "calculus.density") cfg.calculus_density = value;
        else if (key == "borel.curve") cfg.borel_curve = value;
        else if (key == "oracle.paths") cfg.oracle_paths = parse_long(key, value);
        else if (key == "oracle.step") cfg.oracle_step = parse_double(key, value);
        else if (key == "oracle.radius") cfg.oracle_radius = parse_double(key, value);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    if (!saw_grid_min || !saw_grid_max)
        throw ConfigError("config must set grid.min and grid.max");
    if (cfg.checks.empty()) cfg.checks = {"fmt"};
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

void ExperimentConfig::validate(double s_radius) const {
    static const std::vector<std::string> known = {
        "fmt", "smt", "smt-curvature", "defects", "calculus", "borel", "oracle"};
    for (const std::string& c : checks)
        if (std::find(known.begin(), known.end(), c) == known.end())
            throw ConfigError("unknown check '" + c + "'");
    if (!(grid.r_min > 0.0) || !(grid.r_min < grid.r_max))
        throw ConfigError("grid requires 0 < grid.min < grid.max");
    if (grid.points < 2) throw ConfigError("grid.points must be at least 2");
    if (!(grid.r_max < s_radius))
        throw ConfigError("grid.max must stay under the surface radius");
    const double base = r0 ? *r0 : (s_radius > 2.0 ? 1.0 : 0.5 * s_radius);
    if (!(base > 0.0)) throw ConfigError("r0 must be positive");
    if (!(base < grid.r_min)) throw ConfigError("r0 must precede grid");
    if (!(delta > 0.0)) throw ConfigError("delta must be positive");
    if (!(tol > 0.0)) throw ConfigError("tol must be positive");
    if (gamma_kind == "one" && std::isfinite(s_radius))
        throw ConfigError("gamma 'one' requires an infinite surface radius");
    if (oracle_paths < 0) throw ConfigError("oracle.paths must be nonnegative");
    if (smt_coverage <= 0.0 || smt_coverage > 1.0)
        throw ConfigError("smt.coverage must lie in (0, 1]");
}

} // namespace nevlab
