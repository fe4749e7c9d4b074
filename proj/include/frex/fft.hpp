#pragma once

#include <complex>
#include <span>

#include "frex/exec.hpp"

namespace frex::fft {

using cdouble = std::complex<double>;

/// In-place 1D discrete Fourier transform of arbitrary length n >= 1.
/// sign = -1: X_k = sum_j x_j e^{-2*pi*i*j*k/n}; sign = +1: the unnormalized
/// inverse (no 1/n). Powers of two run radix-2; other lengths run Bluestein's
/// chirp-z algorithm on a padded power-of-two convolution.
void transform(std::span<cdouble> data, int sign);

/// Separable transform along every axis of a row-major array with the given
/// extents (last extent fastest). Lines are processed independently and in
/// parallel under Exec::Parallel.
void transform_nd(std::span<cdouble> data, std::span<const int> dims, int sign,
                  Exec ex = default_exec());

}  // namespace frex::fft
