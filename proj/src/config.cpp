#include "pgrad/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pgrad {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_double(const std::string& key, const std::string& value) {
    const char* c = value.c_str();
    char* end = nullptr;
    double v = std::strtod(c, &end);
    if (value.empty() || end != c + value.size())
        throw ConfigError(key + ": not a number: '" + value + "'");
    return v;
}

std::size_t to_count(const std::string& key, const std::string& value) {
    const char* c = value.c_str();
    char* end = nullptr;
    long v = std::strtol(c, &end, 10);
    if (value.empty() || end != c + value.size() || v < 0)
        throw ConfigError(key + ": not a count: '" + value + "'");
    return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(key + ": not a boolean: '" + value + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(value);
    while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
    if (out.empty()) throw ConfigError(key + ": empty list");
    return out;
}

}  // namespace

void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n_seeds")
        cfg.solver.n_seeds = to_count(key, value);
    else if (key == "corrector_tol")
        cfg.solver.corrector_tol = to_double(key, value);
    else if (key == "max_corrector_iters")
        cfg.solver.max_corrector_iters = static_cast<int>(to_count(key, value));
    else if (key == "p_floor")
        cfg.solver.p_floor = to_double(key, value);
    else if (key == "sonic_margin")
        cfg.solver.sonic_margin = to_double(key, value);
    else if (key == "param_switch_lambda")
        cfg.solver.param_switch_lambda = to_double(key, value);
    else if (key == "cluster_ratio")
        cfg.solver.cluster_ratio = to_double(key, value);
    else if (key == "out_dir")
        cfg.out_dir = value;
    else if (key == "p1")
        cfg.p1 = to_double(key, value);
    else if (key == "epsilons")
        cfg.epsilons = to_list(key, value);
    else if (key == "raster_nr")
        cfg.raster_nr = to_count(key, value);
    else if (key == "raster_ntheta")
        cfg.raster_ntheta = to_count(key, value);
    else if (key == "no_plots")
        cfg.no_plots = to_bool(key, value);
    else if (key == "bubble_delta")
        cfg.bubble_delta = to_double(key, value);
    else
        throw ConfigError("unknown config key: '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
        apply_config_key(cfg, key, value);
    }
}

void validate_config(const RunConfig& cfg) {
    const SolverConfig& s = cfg.solver;
    if (s.n_seeds < 2) throw ConfigError("n_seeds must be at least 2");
    if (!(s.corrector_tol > 0.0)) throw ConfigError("corrector_tol must be positive");
    if (s.max_corrector_iters < 1) throw ConfigError("max_corrector_iters must be at least 1");
    if (!(s.p_floor > 0.0)) throw ConfigError("p_floor must be positive");
    if (!(s.sonic_margin >= 0.0)) throw ConfigError("sonic_margin must be nonnegative");
    if (!(s.param_switch_lambda >= 0.0))
        throw ConfigError("param_switch_lambda must be nonnegative");
    if (!(s.cluster_ratio > 0.0)) throw ConfigError("cluster_ratio must be positive");
    if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
    if (!(cfg.p1 > 0.0)) throw ConfigError("p1 must be positive");
    if (cfg.epsilons.empty()) throw ConfigError("epsilons must not be empty");
    for (double e : cfg.epsilons)
        if (!(e > 0.0) || !(e < 1.0)) throw ConfigError("epsilons must lie in (0, 1)");
    for (std::size_t k = 0; k + 1 < cfg.epsilons.size(); ++k)
        if (!(cfg.epsilons[k] > cfg.epsilons[k + 1]))
            throw ConfigError("epsilons must be strictly descending");
    if (cfg.raster_nr < 5 || cfg.raster_ntheta < 5)
        throw ConfigError("raster dimensions must be at least 5");
    if (!(cfg.bubble_delta > 0.0) || !(cfg.bubble_delta < kPi / 4.0))
        throw ConfigError("bubble_delta must lie in (0, pi/4)");
}

}  // namespace pgrad
