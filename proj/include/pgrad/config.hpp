#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pgrad/coords.hpp"
#include "pgrad/solver.hpp"

namespace pgrad {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    SolverConfig solver;
    std::string out_dir = "out";
    double p1 = 1.0;
    std::vector<double> epsilons = {1e-2, 1e-3, 1e-4, 1e-5};
    std::size_t raster_nr = 96;
    std::size_t raster_ntheta = 96;
    bool no_plots = false;
    double bubble_delta = kPi / 36.0;
};

// Known keys: n_seeds, corrector_tol, max_corrector_iters, p_floor,
// sonic_margin, param_switch_lambda, cluster_ratio, out_dir, p1, epsilons,
// raster_nr, raster_ntheta, no_plots, bubble_delta.  Unknown keys are errors.
void apply_config_key(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat "key = value" lines; # starts a comment.
void load_config_file(RunConfig& cfg, const std::string& path);

void validate_config(const RunConfig& cfg);

}  // namespace pgrad
