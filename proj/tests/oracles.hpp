#pragma once

// Brute-force reference implementations used only by the tests. They follow
// the definitions directly (quadratic-cost sums, scalar ODE updates) and are
// kept independent of the library's transform and stepping code paths.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "frex/grid.hpp"

namespace oracles {

using cdouble = std::complex<double>;

/// Plain O(n^2) DFT: X_k = sum_j x_j e^{sign * 2*pi*i*j*k/n}.
inline std::vector<cdouble> dft_1d(const std::vector<cdouble>& x, int sign) {
    const std::size_t n = x.size();
    std::vector<cdouble> out(n, cdouble(0, 0));
    const double base = sign * 2.0 * 3.14159265358979323846 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j)
            out[k] += x[j] * std::polar(1.0, base * static_cast<double>(j * k % n));
    return out;
}

/// Direct evaluation of the continuous-convention transform on the grid:
/// coeff(m) = dx^dim * sum_j f(x_j) e^{-i x_j . xi_m}, stored in FFT order.
inline std::vector<cdouble> brute_forward(const frex::RealField& f) {
    const frex::GridSpec& g = f.grid;
    const std::size_t total = g.total_points();
    std::vector<cdouble> out(total, cdouble(0, 0));
    const double dx = g.spacing();
    double weight = 1.0;
    for (int d = 0; d < g.dim; ++d) weight *= dx;

    std::vector<std::array<int, 3>> indices(total);
    frex::for_each_index(g, [&](std::size_t i, const std::array<int, 3>& idx) {
        indices[i] = idx;
    });
    for (std::size_t k = 0; k < total; ++k) {
        cdouble acc(0, 0);
        for (std::size_t j = 0; j < total; ++j) {
            double phase = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                double xi = g.xi_component(g.wave_index(indices[k][d]));
                phase -= xi * g.coordinate(indices[j][d]);
            }
            acc += f.values[j] * std::polar(1.0, phase);
        }
        out[k] = weight * acc;
    }
    return out;
}

/// One Heun (explicit trapezoid) step for w' = w^p.
inline double heun_power_step(double w, double p, double dt) {
    auto rhs = [&](double x) { return std::pow(std::abs(x), p) * (x < 0 ? -1.0 : 1.0); };
    double pred = w + dt * rhs(w);
    return w + 0.5 * dt * (rhs(w) + rhs(pred));
}

inline frex::RealField random_field(const frex::GridSpec& g, unsigned seed, double scale = 1.0) {
    frex::RealField f(g);
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-scale, scale);
    for (double& v : f.values) v = dist(rng);
    return f;
}

}  // namespace oracles
