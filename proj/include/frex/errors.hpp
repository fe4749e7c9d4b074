#pragma once

#include <stdexcept>
#include <string>

namespace frex {

/// Input field contains non-finite values (NaN/Inf) where finite data is required.
struct DivergedInputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Spectral data violates the conjugate symmetry required of real fields.
struct SymmetryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A Fourier symbol evaluated to a non-finite value at some wave index.
struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid cannot resolve the requested kernel or feature scale.
struct ResolutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Operands live on different grids.
struct ShapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Not enough samples in a fit window or sweep table.
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace frex
