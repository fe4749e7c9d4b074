#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace frex {

using cdouble = std::complex<double>;

/// Uniform periodic box [-L, L)^dim sampled with N points per axis.
/// Samples sit at x_j = -L + j*dx, dx = 2L/N; wave indices run over
/// m in [-N/2, N/2) per axis with physical wavenumber xi = (pi/L)*m.
struct GridSpec {
    int dim = 1;
    int points_per_axis = 0;
    double half_length = 0.0;

    double spacing() const { return 2.0 * half_length / points_per_axis; }

    std::size_t total_points() const {
        std::size_t t = 1;
        for (int d = 0; d < dim; ++d) t *= static_cast<std::size_t>(points_per_axis);
        return t;
    }

    /// Storage index k along an axis -> signed wave index m.
    int wave_index(int k) const {
        return k < points_per_axis / 2 ? k : k - points_per_axis;
    }

    double xi_component(int m) const {
        return 3.14159265358979323846 / half_length * static_cast<double>(m);
    }

    double coordinate(int j) const { return -half_length + j * spacing(); }

    void validate() const {
        if (dim < 1 || dim > 3) throw std::domain_error("GridSpec: dim must be 1..3");
        if (points_per_axis < 8 || points_per_axis % 2 != 0)
            throw std::domain_error("GridSpec: points_per_axis must be even and >= 8");
        if (!(half_length > 0.0)) throw std::domain_error("GridSpec: half_length must be > 0");
        // N^dim must stay well inside size_t; 2^40 points is already far
        // beyond anything this code is meant to hold in memory.
        double total = 1.0;
        for (int d = 0; d < dim; ++d) total *= points_per_axis;
        if (total > 1.1e12) throw std::domain_error("GridSpec: total point count too large");
    }

    bool operator==(const GridSpec&) const = default;
};

/// Real samples of a function on the grid, row-major (last axis fastest).
struct RealField {
    GridSpec grid;
    std::vector<double> values;
    bool diverged = false;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), values(g.total_points(), 0.0) {}
    RealField(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != g.total_points())
            throw std::invalid_argument("RealField: value count does not match grid");
    }
};

/// Fourier coefficients of a grid function, same row-major layout with the
/// standard FFT ordering (k < N/2 are nonnegative waves, k >= N/2 negative).
struct SpectralField {
    GridSpec grid;
    std::vector<cdouble> coeffs;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g)
        : grid(g), coeffs(g.total_points(), cdouble(0.0, 0.0)) {}
};

/// Calls f(linear_index, multi_index) over the whole grid in storage order.
template <typename F>
void for_each_index(const GridSpec& g, F&& f) {
    const int n = g.points_per_axis;
    std::array<int, 3> idx{0, 0, 0};
    const std::size_t total = g.total_points();
    for (std::size_t i = 0; i < total; ++i) {
        f(i, idx);
        for (int a = g.dim - 1; a >= 0; --a) {
            if (++idx[a] < n) break;
            idx[a] = 0;
        }
    }
}

}  // namespace frex
