#include "frex/fft.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frex::fft {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Roots and bit-reversal permutation for one power-of-two size. Tables are
// built once per size and shared; transform() itself touches them read-only.
struct Radix2Tables {
    std::size_t n = 0;
    std::vector<cdouble> roots;       // exp(-2*pi*i*j/n), j in [0, n/2)
    std::vector<std::uint32_t> brev;  // bit-reversal permutation

    explicit Radix2Tables(std::size_t n_) : n(n_), roots(n_ / 2), brev(n_) {
        const double theta = -2.0 * std::numbers::pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n / 2; ++j)
            roots[j] = std::polar(1.0, theta * static_cast<double>(j));
        int bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t r = 0;
            for (int b = 0; b < bits; ++b)
                if (i >> b & 1) r |= std::uint32_t{1} << (bits - 1 - b);
            brev[i] = r;
        }
    }
};

// Chirp tables for one Bluestein size and sign.
struct BluesteinTables {
    std::size_t n = 0;
    std::size_t m = 0;                // padded power-of-two length >= 2n-1
    std::vector<cdouble> chirp;       // exp(sign*pi*i*k^2/n)
    std::vector<cdouble> kernel_fft;  // FFT_m of conjugate chirp, extended
};

std::shared_ptr<const Radix2Tables> radix2_tables(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, std::shared_ptr<const Radix2Tables>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const Radix2Tables>(n);
    cache.emplace(n, t);
    return t;
}

void transform_pow2(std::span<cdouble> a, int sign, const Radix2Tables& t) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = t.brev[i];
        if (i < r) std::swap(a[i], a[r]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t step = n / len;
        for (std::size_t base = 0; base < n; base += len) {
            for (std::size_t j = 0; j < half; ++j) {
                cdouble w = t.roots[j * step];
                if (sign > 0) w = std::conj(w);
                cdouble tmp = w * a[base + j + half];
                a[base + j + half] = a[base + j] - tmp;
                a[base + j] += tmp;
            }
        }
    }
}

std::shared_ptr<const BluesteinTables> bluestein_tables(std::size_t n, int sign) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, int>,
                    std::shared_ptr<const BluesteinTables>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    auto t = std::make_shared<BluesteinTables>();
    t->n = n;
    t->m = next_pow2(2 * n - 1);
    t->chirp.resize(n);
    // k^2 is reduced mod 2n in exact integer arithmetic before the angle is
    // formed, otherwise large k loses the low-order bits that matter here.
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t k2 = (static_cast<std::uint64_t>(k) * k) % (2 * n);
        double angle = sign * std::numbers::pi * static_cast<double>(k2) /
                       static_cast<double>(n);
        t->chirp[k] = std::polar(1.0, angle);
    }
    std::vector<cdouble> kern(t->m, cdouble(0.0, 0.0));
    kern[0] = std::conj(t->chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
        kern[k] = std::conj(t->chirp[k]);
        kern[t->m - k] = std::conj(t->chirp[k]);
    }
    auto tab = Radix2Tables(t->m);
    transform_pow2(kern, -1, tab);
    t->kernel_fft = std::move(kern);
    cache.emplace(key, t);
    return t;
}

void transform_bluestein(std::span<cdouble> a, int sign) {
    const std::size_t n = a.size();
    auto t = bluestein_tables(n, sign);
    auto r2 = radix2_tables(t->m);
    std::vector<cdouble> work(t->m, cdouble(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) work[k] = a[k] * t->chirp[k];
    transform_pow2(work, -1, *r2);
    for (std::size_t k = 0; k < t->m; ++k) work[k] *= t->kernel_fft[k];
    transform_pow2(work, +1, *r2);
    const double inv_m = 1.0 / static_cast<double>(t->m);
    for (std::size_t k = 0; k < n; ++k) a[k] = t->chirp[k] * (work[k] * inv_m);
}

}  // namespace

void transform(std::span<cdouble> data, int sign) {
    const std::size_t n = data.size();
    if (n <= 1) return;
    if (is_pow2(n)) {
        auto t = radix2_tables(n);
        transform_pow2(data, sign, *t);
    } else {
        transform_bluestein(data, sign);
    }
}

void transform_nd(std::span<cdouble> data, std::span<const int> dims, int sign,
                  Exec ex) {
    const int ndim = static_cast<int>(dims.size());
    std::size_t total = 1;
    for (int d = 0; d < ndim; ++d) total *= static_cast<std::size_t>(dims[d]);
    if (total != data.size()) throw std::invalid_argument("transform_nd: extent mismatch");

    for (int axis = 0; axis < ndim; ++axis) {
        const std::size_t len = static_cast<std::size_t>(dims[axis]);
        if (len <= 1) continue;
        std::size_t stride = 1;
        for (int d = axis + 1; d < ndim; ++d) stride *= static_cast<std::size_t>(dims[d]);
        const std::size_t nlines = total / len;

        // Warm the shared tables before fanning out; afterwards the loop
        // body only reads them.
        if (is_pow2(len)) {
            radix2_tables(len);
        } else {
            bluestein_tables(len, sign);
            radix2_tables(next_pow2(2 * len - 1));
        }

        auto do_line = [&](std::size_t line, std::vector<cdouble>& scratch) {
            // Lines along 'axis' enumerate all indices with that axis removed.
            std::size_t outer = line / stride;
            std::size_t inner = line % stride;
            std::size_t base = outer * stride * len + inner;
            if (stride == 1) {
                transform(data.subspan(base, len), sign);
                return;
            }
            scratch.resize(len);
            for (std::size_t j = 0; j < len; ++j) scratch[j] = data[base + j * stride];
            transform(scratch, sign);
            for (std::size_t j = 0; j < len; ++j) data[base + j * stride] = scratch[j];
        };

        bool par = ex == Exec::Parallel && parallel_available() && nlines > 1 &&
                   total >= (std::size_t{1} << 14);
        if (par) {
#ifdef _OPENMP
#pragma omp parallel
            {
                std::vector<cdouble> scratch;
#pragma omp for schedule(static)
                for (std::ptrdiff_t line = 0; line < static_cast<std::ptrdiff_t>(nlines);
                     ++line)
                    do_line(static_cast<std::size_t>(line), scratch);
            }
#endif
        } else {
            std::vector<cdouble> scratch;
            for (std::size_t line = 0; line < nlines; ++line) do_line(line, scratch);
        }
    }
}

}  // namespace frex::fft
