#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "frex/exec.hpp"

// Data-parallel primitives used by the spectral operators and the time
// stepper. Every kernel has a serial reference implementation and an
// OpenMP one; the two are compared in the test suite and in the
// benchmark target. Pointwise kernels are bitwise identical across
// policies. Reductions on the Parallel path use a fixed chunk
// decomposition, so their result does not depend on the thread count.

namespace frex::kernels {

using cdouble = std::complex<double>;

// ---- pointwise real ----

void scale(std::span<double> dst, std::span<const double> src, double c,
           Exec ex = default_exec());

/// dst = sign(src)*|src|^r. Returns false if any output is non-finite.
bool pow_signed(std::span<double> dst, std::span<const double> src, double r,
                Exec ex = default_exec());

/// dst = src^r, defined for nonnegative src only.
/// negative_input is set when some src < 0 (output there is NaN).
/// Returns false if any output is non-finite.
bool pow_plain(std::span<double> dst, std::span<const double> src, double r,
               bool& negative_input, Exec ex = default_exec());

// ---- pointwise complex ----

/// dst = src * factors (real symbol array).
void multiply_real(std::span<cdouble> dst, std::span<const cdouble> src,
                   std::span<const double> factors, Exec ex = default_exec());

/// dst = src * factors (complex symbol array).
void multiply_complex(std::span<cdouble> dst, std::span<const cdouble> src,
                      std::span<const cdouble> factors, Exec ex = default_exec());

/// out_u = heat*(a0u*u + a1u*v), out_v = heat*(a0v*u + a1v*v).
/// The per-mode action of the coupled linear propagator: a diffusion
/// factor times a 2x2 exchange matrix with scalar entries.
void exchanger_combine(std::span<cdouble> out_u, std::span<cdouble> out_v,
                       std::span<const cdouble> u, std::span<const cdouble> v,
                       std::span<const double> heat,
                       double a0u, double a1u, double a0v, double a1v,
                       Exec ex = default_exec());

/// dst = x + c*y.
void axpy(std::span<cdouble> dst, std::span<const cdouble> x,
          std::span<const cdouble> y, double c, Exec ex = default_exec());

/// dst = x + c*(y + z).
void axpy2(std::span<cdouble> dst, std::span<const cdouble> x,
           std::span<const cdouble> y, std::span<const cdouble> z, double c,
           Exec ex = default_exec());

/// Zero every entry whose mask byte is 0.
void apply_mask(std::span<cdouble> dst, std::span<const unsigned char> mask,
                Exec ex = default_exec());

// ---- reductions ----

double sum(std::span<const double> src, Exec ex = default_exec());
double sum_abs(std::span<const double> src, Exec ex = default_exec());
double sum_sq(std::span<const double> src, Exec ex = default_exec());
double sum_abs_pow(std::span<const double> src, double m, Exec ex = default_exec());
double max_abs(std::span<const double> src, Exec ex = default_exec());
double min_value(std::span<const double> src, Exec ex = default_exec());
bool all_finite(std::span<const double> src, Exec ex = default_exec());
bool all_finite_complex(std::span<const cdouble> src, Exec ex = default_exec());
double max_abs_complex(std::span<const cdouble> src, Exec ex = default_exec());
double max_abs_imag(std::span<const cdouble> src, Exec ex = default_exec());

}  // namespace frex::kernels
