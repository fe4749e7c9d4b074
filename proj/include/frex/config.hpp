#pragma once

#include <string>
#include <vector>

#include "frex/initial_data.hpp"
#include "frex/semilinear.hpp"

// Line-oriented experiment configuration: [section] headers, key = value
// pairs, '#' comments. Every key may be overridden through the environment
// as FREX_<SECTION>__<KEY> (uppercase). Validation collects all problems
// instead of stopping at the first one.

namespace frex::config {

struct ConfigError : std::runtime_error {
    std::vector<std::string> problems;
    explicit ConfigError(std::vector<std::string> errs);
};

struct ExperimentConfig {
    // [model]
    int dim = 1;
    double sigma = 1.0, mu = 1.0, nu = 1.0;
    double p = 2.0, q = 2.0;
    double epsilon = 0.1;
    semilinear::Nonlin nonlin = semilinear::Nonlin::signed_power;
    // [grid]
    int points = 1024;
    double half_length = 64.0;
    // [time]
    double dt = 0.01;
    double t_max = 10.0;
    int snapshot_stride = 10;
    bool dealias = true;
    bool duhamel_check = false;
    // [initial_u], [initial_v]
    initial_data::DataSpec initial_u, initial_v;
    // [lifespan]
    std::vector<double> eps_list;  // decreasing; generated from min/max/count if absent
    double blowup_threshold = 1e6;
    int workers = 1;
    double hard_cap = 1e5;
    // [output]
    std::string directory = "out";
    bool emit_svg = true;

    GridSpec grid() const;
    semilinear::SemilinearParams semilinear_params() const;
    semilinear::SolverConfig solver_config() const;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

}  // namespace frex::config
