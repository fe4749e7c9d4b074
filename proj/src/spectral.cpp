#include "frex/spectral.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "frex/errors.hpp"
#include "frex/fft.hpp"
#include "frex/kernels.hpp"

namespace frex::spectral {

namespace {

// The samples live at x_j = -L + j*dx rather than at j*dx, which shifts
// every mode by e^{+i*pi*m} = (-1)^m relative to the plain DFT. Since N is
// even, (-1)^m == (-1)^k for the storage index k, so the phase reduces to a
// checkerboard over the multi-index digit sum.
template <typename T>
void checkerboard_scale(const GridSpec& g, std::vector<T>& a, double c) {
    const int n = g.points_per_axis;
    std::array<int, 3> idx{0, 0, 0};
    int parity = 0;
    const std::size_t total = g.total_points();
    for (std::size_t i = 0; i < total; ++i) {
        a[i] *= parity ? -c : c;
        for (int ax = g.dim - 1; ax >= 0; --ax) {
            if (++idx[ax] < n) {
                parity ^= 1;
                break;
            }
            idx[ax] = 0;
            parity ^= 1;  // N-1 -> 0 flips parity once more (N even)
        }
    }
}

std::array<int, 3> dims_array(const GridSpec& g) {
    std::array<int, 3> d{1, 1, 1};
    for (int i = 0; i < g.dim; ++i) d[i] = g.points_per_axis;
    return d;
}

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

std::vector<double> xi_squared_table(const GridSpec& grid) {
    std::vector<double> xi2(grid.total_points());
    std::vector<double> axis(grid.points_per_axis);
    for (int k = 0; k < grid.points_per_axis; ++k) {
        double x = grid.xi_component(grid.wave_index(k));
        axis[k] = x * x;
    }
    for_each_index(grid, [&](std::size_t i, const std::array<int, 3>& idx) {
        double s = 0.0;
        for (int d = 0; d < grid.dim; ++d) s += axis[idx[d]];
        xi2[i] = s;
    });
    return xi2;
}

std::vector<double> heat_multiplier(const GridSpec& grid, double sigma, double t) {
    auto xi2 = xi_squared_table(grid);
    std::vector<double> out(xi2.size());
    for (std::size_t i = 0; i < xi2.size(); ++i)
        out[i] = xi2[i] == 0.0 ? 1.0 : std::exp(-std::pow(xi2[i], sigma) * t);
    return out;
}

std::vector<unsigned char> dealias_mask(const GridSpec& grid) {
    std::vector<unsigned char> mask(grid.total_points(), 1);
    const double cutoff = grid.points_per_axis / 3.0;
    for_each_index(grid, [&](std::size_t i, const std::array<int, 3>& idx) {
        for (int d = 0; d < grid.dim; ++d) {
            if (std::abs(grid.wave_index(idx[d])) > cutoff) {
                mask[i] = 0;
                return;
            }
        }
    });
    return mask;
}

SpectralField forward_transform(const RealField& f) {
    f.grid.validate();
    if (f.diverged || !kernels::all_finite(f.values))
        throw DivergedInputError("forward_transform: field contains non-finite values");

    SpectralField out(f.grid);
    for (std::size_t i = 0; i < f.values.size(); ++i) out.coeffs[i] = f.values[i];
    auto dims = dims_array(f.grid);
    fft::transform_nd(out.coeffs, std::span<const int>(dims.data(), f.grid.dim), -1);
    const double w = ipow(f.grid.spacing(), f.grid.dim);
    checkerboard_scale(f.grid, out.coeffs, w);
    return out;
}

RealField inverse_transform(const SpectralField& F) {
    F.grid.validate();
    if (!kernels::all_finite_complex(F.coeffs))
        throw DivergedInputError("inverse_transform: coefficients contain non-finite values");

    std::vector<cdouble> buf = F.coeffs;
    const double w = 1.0 / ipow(2.0 * F.grid.half_length, F.grid.dim);
    checkerboard_scale(F.grid, buf, w);
    auto dims = dims_array(F.grid);
    fft::transform_nd(buf, std::span<const int>(dims.data(), F.grid.dim), +1);

    double max_mag = kernels::max_abs_complex(buf);
    double max_imag = kernels::max_abs_imag(buf);
    if (max_mag > 0.0 && max_imag > 1e-10 * max_mag)
        throw SymmetryError("inverse_transform: imaginary residue " +
                            std::to_string(max_imag / max_mag) +
                            " exceeds 1e-10 of max; coefficients are not conjugate-symmetric");

    RealField out(F.grid);
    for (std::size_t i = 0; i < buf.size(); ++i) out.values[i] = buf[i].real();
    return out;
}

SpectralField apply_multiplier(const SpectralField& F, const Symbol& symbol) {
    F.grid.validate();
    SpectralField out(F.grid);
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    bool bad = false;
    std::array<int, 3> bad_idx{0, 0, 0};
    for_each_index(F.grid, [&](std::size_t i, const std::array<int, 3>& idx) {
        if (bad) return;
        for (int d = 0; d < F.grid.dim; ++d)
            xi[d] = F.grid.xi_component(F.grid.wave_index(idx[d]));
        cdouble s = symbol(std::span<const double>(xi.data(), F.grid.dim));
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            bad = true;
            bad_idx = idx;
            return;
        }
        out.coeffs[i] = F.coeffs[i] * s;
    });
    if (bad) {
        std::string where = "(";
        for (int d = 0; d < F.grid.dim; ++d) {
            where += std::to_string(F.grid.wave_index(bad_idx[d]));
            where += d + 1 < F.grid.dim ? "," : ")";
        }
        throw SymbolError("apply_multiplier: symbol not finite at wave index " + where);
    }
    return out;
}

RealField heat_kernel_field(double t, const GridSpec& grid, double sigma) {
    grid.validate();
    if (!(t > 0.0)) throw std::domain_error("heat_kernel_field: t must be > 0");
    if (!(sigma > 0.0)) throw std::domain_error("heat_kernel_field: sigma must be > 0");
    SpectralField F(grid);
    auto mult = heat_multiplier(grid, sigma, t);
    for (std::size_t i = 0; i < mult.size(); ++i) F.coeffs[i] = mult[i];
    return inverse_transform(F);
}

double lm_norm_raw(const GridSpec& grid, std::span<const double> values, double m) {
    if (std::isinf(m)) return kernels::max_abs(values);
    const double w = ipow(grid.spacing(), grid.dim);
    if (m == 1.0) return w * kernels::sum_abs(values);
    if (m == 2.0) return std::sqrt(w * kernels::sum_sq(values));
    return std::pow(w * kernels::sum_abs_pow(values, m), 1.0 / m);
}

double lm_norm(const RealField& f, double m) {
    if (!(m >= 1.0)) throw std::domain_error("lm_norm: order must be >= 1");
    if (f.diverged || !kernels::all_finite(f.values))
        throw DivergedInputError("lm_norm: field contains non-finite values");
    return lm_norm_raw(f.grid, f.values, m);
}

double mass(const RealField& f) {
    if (f.diverged || !kernels::all_finite(f.values))
        throw DivergedInputError("mass: field contains non-finite values");
    return ipow(f.grid.spacing(), f.grid.dim) * kernels::sum(f.values);
}

KernelScaling kernel_scaling_ratio(double s, double sigma, double m, double t,
                                   double factor, const GridSpec& grid) {
    grid.validate();
    if (!(s >= 0.0)) throw std::domain_error("kernel_scaling_ratio: s must be >= 0");
    if (!(sigma > 0.0)) throw std::domain_error("kernel_scaling_ratio: sigma must be > 0");
    if (!(m >= 1.0)) throw std::domain_error("kernel_scaling_ratio: m must be >= 1");
    if (!(t > 0.0)) throw std::domain_error("kernel_scaling_ratio: t must be > 0");
    if (!(factor > 1.0)) throw std::domain_error("kernel_scaling_ratio: factor must be > 1");

    KernelScaling r;
    r.width_t = std::pow(t, 1.0 / (2.0 * sigma));
    r.width_factor_t = std::pow(factor * t, 1.0 / (2.0 * sigma));
    const double dx = grid.spacing();
    if (r.width_t < 4.0 * dx || r.width_factor_t > grid.half_length / 4.0)
        throw ResolutionError(
            "kernel_scaling_ratio: kernel widths " + std::to_string(r.width_t) + " and " +
            std::to_string(r.width_factor_t) + " not within [4*dx, L/4] = [" +
            std::to_string(4.0 * dx) + ", " + std::to_string(grid.half_length / 4.0) + "]");

    auto xi2 = xi_squared_table(grid);
    auto eval = [&](double time) {
        SpectralField F(grid);
        for (std::size_t i = 0; i < xi2.size(); ++i) {
            double a = xi2[i] == 0.0 ? (s == 0.0 ? 1.0 : 0.0)
                                     : std::pow(xi2[i], s / 2.0);
            double h = xi2[i] == 0.0 ? 1.0 : std::exp(-std::pow(xi2[i], sigma) * time);
            F.coeffs[i] = a * h;
        }
        return lm_norm(inverse_transform(F), m);
    };
    r.norm_t = eval(t);
    r.norm_factor_t = eval(factor * t);
    r.ratio = r.norm_factor_t / r.norm_t;
    const double n = grid.dim;
    double one_minus = std::isinf(m) ? 1.0 : 1.0 - 1.0 / m;
    r.predicted = std::pow(factor, -n / (2.0 * sigma) * one_minus - s / (2.0 * sigma));
    return r;
}

}  // namespace frex::spectral
