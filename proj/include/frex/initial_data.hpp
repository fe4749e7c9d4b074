#pragma once

#include <array>
#include <string>

#include "frex/grid.hpp"

namespace frex::initial_data {

enum class Kind { gaussian, bump, mode, constant, file };

struct DataSpec {
    Kind kind = Kind::gaussian;
    double amplitude = 1.0;
    double width = 1.0;                  // gaussian / bump scale
    std::array<double, 3> center{0, 0, 0};
    int mode_index = 1;                  // cosine wave index along the first axis
    std::string path;                    // file kind: whitespace-separated values

    void validate() const;
};

/// Samples the requested datum on the grid:
///   gaussian: a * exp(-|x-c|^2 / w^2)
///   bump:     a * exp(1 - 1/(1 - |x-c|^2/w^2)) inside |x-c| < w, else 0
///   mode:     a * cos(k * pi/L * x_1)
///   constant: a
///   file:     N^dim values read in storage order
RealField build_field(const GridSpec& grid, const DataSpec& spec);

}  // namespace frex::initial_data
