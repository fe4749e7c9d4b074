#pragma once

#include <string>

#include "frex/config.hpp"

namespace frex::commands {

struct Options {
    std::string out_dir;  // overrides [output] directory when nonempty
    int workers = 0;      // overrides [lifespan] workers when > 0
    bool no_svg = false;
};

// Each command runs its experiment, writes CSV reports plus a key=value
// summary.txt into the output directory, prints one line per check and
// returns 0 iff every check passed.
int linear_verify(const config::ExperimentConfig& cfg, const Options& opt);
int simulate_cmd(const config::ExperimentConfig& cfg, const Options& opt);
int decay(const config::ExperimentConfig& cfg, const Options& opt);
int profile(const config::ExperimentConfig& cfg, const Options& opt);
int lifespan_sweep(const config::ExperimentConfig& cfg, const Options& opt);
int kernel_scaling(const config::ExperimentConfig& cfg, const Options& opt);

}  // namespace frex::commands
