#pragma once

#include <functional>
#include <span>

#include "frex/grid.hpp"

// Discrete function spaces on the periodic box: transforms, Fourier
// multipliers, the fractional diffusion kernel and L^m norms. The forward
// transform carries the dx^dim quadrature weight, so coeff(0) equals the
// integral of the field; the inverse carries (2L)^-dim.

namespace frex::spectral {

/// Symbol callback: receives the wavenumber vector (xi_1..xi_dim) and the
/// signed integer wave indices, returns the multiplier value.
using Symbol = std::function<cdouble(std::span<const double> xi)>;

SpectralField forward_transform(const RealField& f);
RealField inverse_transform(const SpectralField& F);

SpectralField apply_multiplier(const SpectralField& F, const Symbol& symbol);

/// Discrete fractional heat kernel G(t, .) = inverse of e^{-|xi|^(2*sigma)*t}.
RealField heat_kernel_field(double t, const GridSpec& grid, double sigma);

/// Riemann-sum L^m norm; pass infinity for the sup norm.
double lm_norm(const RealField& f, double m);

/// Signed integral dx^dim * sum(f).
double mass(const RealField& f);

struct KernelScaling {
    double ratio = 0.0;        // norm at factor*t over norm at t
    double predicted = 0.0;    // factor^(-(n/2s)(1-1/m) - s_ord/2s)
    double norm_t = 0.0;
    double norm_factor_t = 0.0;
    double width_t = 0.0;      // self-similar scale t^(1/(2*sigma))
    double width_factor_t = 0.0;
};

/// Measures the L^m norm of F^-1(|xi|^s e^{-|xi|^(2*sigma)*t}) at t and at
/// factor*t and compares their ratio with the self-similar scaling law.
KernelScaling kernel_scaling_ratio(double s, double sigma, double m, double t,
                                   double factor, const GridSpec& grid);

// ---- building blocks shared with the propagators ----

/// |xi|^2 at every storage index.
std::vector<double> xi_squared_table(const GridSpec& grid);

/// e^{-|xi|^(2*sigma)*t} at every storage index. |xi|^(2*sigma) is 0 at xi=0.
std::vector<double> heat_multiplier(const GridSpec& grid, double sigma, double t);

/// Two-thirds rule: 1 where every axis satisfies |m| <= N/3, else 0.
std::vector<unsigned char> dealias_mask(const GridSpec& grid);

/// Norms evaluated directly on a value array (no finiteness check); the
/// public lm_norm validates and forwards here.
double lm_norm_raw(const GridSpec& grid, std::span<const double> values, double m);

}  // namespace frex::spectral
