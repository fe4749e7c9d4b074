#include "frex/initial_data.hpp"

#include <cmath>
#include <fstream>

#include "frex/errors.hpp"

namespace frex::initial_data {

void DataSpec::validate() const {
    if ((kind == Kind::gaussian || kind == Kind::bump) && !(width > 0.0))
        throw std::domain_error("initial data: width must be > 0");
    if (kind == Kind::file && path.empty())
        throw std::domain_error("initial data: file kind needs a path");
}

RealField build_field(const GridSpec& grid, const DataSpec& spec) {
    grid.validate();
    spec.validate();
    RealField out(grid);

    if (spec.kind == Kind::file) {
        std::ifstream in(spec.path);
        if (!in) throw std::runtime_error("initial data: cannot open " + spec.path);
        for (std::size_t i = 0; i < out.values.size(); ++i)
            if (!(in >> out.values[i]))
                throw std::runtime_error("initial data: " + spec.path + " holds fewer than " +
                                         std::to_string(out.values.size()) + " values");
        return out;
    }
    if (spec.kind == Kind::constant) {
        for (double& x : out.values) x = spec.amplitude;
        return out;
    }
    if (spec.kind == Kind::mode) {
        const double k = spec.mode_index * 3.14159265358979323846 / grid.half_length;
        for_each_index(grid, [&](std::size_t i, const std::array<int, 3>& idx) {
            out.values[i] = spec.amplitude * std::cos(k * grid.coordinate(idx[0]));
        });
        return out;
    }

    const double w2 = spec.width * spec.width;
    for_each_index(grid, [&](std::size_t i, const std::array<int, 3>& idx) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
            double dx = grid.coordinate(idx[d]) - spec.center[d];
            r2 += dx * dx;
        }
        if (spec.kind == Kind::gaussian) {
            out.values[i] = spec.amplitude * std::exp(-r2 / w2);
        } else {  // bump
            double s = r2 / w2;
            out.values[i] = s < 1.0 ? spec.amplitude * std::exp(1.0 - 1.0 / (1.0 - s)) : 0.0;
        }
    });
    return out;
}

}  // namespace frex::initial_data
