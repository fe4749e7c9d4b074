#pragma once

#include "frex/errors.hpp"
#include "frex/grid.hpp"

namespace frex::fields {

inline void require_same_grid(const RealField& a, const RealField& b, const char* what) {
    if (!(a.grid == b.grid))
        throw ShapeError(std::string(what) + ": fields live on different grids");
}

inline RealField linear_combo(double ca, const RealField& a, double cb, const RealField& b) {
    require_same_grid(a, b, "linear_combo");
    RealField out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = ca * a.values[i] + cb * b.values[i];
    return out;
}

inline RealField scaled(const RealField& a, double c) {
    RealField out(a.grid);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = c * a.values[i];
    return out;
}

inline RealField difference(const RealField& a, const RealField& b) {
    return linear_combo(1.0, a, -1.0, b);
}

}  // namespace frex::fields
