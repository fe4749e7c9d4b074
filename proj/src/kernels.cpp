#include "frex/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frex {

namespace {
std::atomic<Exec> g_default_exec{Exec::Parallel};
}

Exec default_exec() { return g_default_exec.load(std::memory_order_relaxed); }
void set_default_exec(Exec e) { g_default_exec.store(e, std::memory_order_relaxed); }

bool parallel_available() {
#ifdef _OPENMP
    return omp_get_max_threads() > 1 && !omp_in_parallel();
#else
    return false;
#endif
}

}  // namespace frex

namespace frex::kernels {

namespace {

constexpr std::size_t kChunk = 8192;  // fixed reduction chunk, thread-count independent
constexpr std::size_t kParGrain = 1 << 15;  // below this, fan-out costs more than it saves

bool go_parallel(Exec ex, std::size_t n) {
    return ex == Exec::Parallel && n >= kParGrain && parallel_available();
}

// Exponent dispatch: integer powers by repeated multiplication, the rest
// through std::pow. r > 1 always in this codebase but small integers
// dominate, and pow() per grid point is the difference between seconds
// and minutes in the sweeps.
struct PowEval {
    double r;
    int ir;
    bool is_int;
    explicit PowEval(double r_) : r(r_) {
        double rd = std::round(r_);
        is_int = std::abs(r_ - rd) < 1e-12 && std::abs(rd) < 64.0;
        ir = static_cast<int>(rd);
    }
    double operator()(double x) const {
        if (is_int) {
            double acc = 1.0;
            double base = x;
            int e = ir;
            while (e > 0) {
                if (e & 1) acc *= base;
                base *= base;
                e >>= 1;
            }
            return acc;
        }
        return std::pow(x, r);
    }
};

template <typename F>
void pointwise(std::size_t n, Exec ex, F&& body) {
    if (go_parallel(ex, n)) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            body(static_cast<std::size_t>(i));
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Chunked reduction: partials are produced per fixed chunk and combined
// in chunk order, so the floating-point result is independent of how
// chunks were distributed over threads.
template <typename Partial, typename Combine>
double reduce_chunked(std::size_t n, Exec ex, Partial&& partial, Combine&& combine,
                      double init) {
    if (n == 0) return init;
    std::size_t nchunks = (n + kChunk - 1) / kChunk;
    if (nchunks == 1 || !go_parallel(ex, n)) {
        double acc = init;
        for (std::size_t c = 0; c < nchunks; ++c) {
            std::size_t lo = c * kChunk;
            std::size_t hi = std::min(n, lo + kChunk);
            acc = combine(acc, partial(lo, hi));
        }
        return acc;
    }
    std::vector<double> parts(nchunks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        std::size_t lo = static_cast<std::size_t>(c) * kChunk;
        std::size_t hi = std::min(n, lo + kChunk);
        parts[static_cast<std::size_t>(c)] = partial(lo, hi);
    }
    double acc = init;
    for (double p : parts) acc = combine(acc, p);
    return acc;
}

}  // namespace

void scale(std::span<double> dst, std::span<const double> src, double c, Exec ex) {
    pointwise(src.size(), ex, [&](std::size_t i) { dst[i] = c * src[i]; });
}

bool pow_signed(std::span<double> dst, std::span<const double> src, double r, Exec ex) {
    PowEval pw(r);
    pointwise(src.size(), ex, [&](std::size_t i) {
        double x = src[i];
        double v = pw(std::abs(x));
        dst[i] = x < 0 ? -v : v;
    });
    return all_finite(dst, ex);
}

bool pow_plain(std::span<double> dst, std::span<const double> src, double r,
               bool& negative_input, Exec ex) {
    PowEval pw(r);
    std::atomic<bool> neg{false};
    pointwise(src.size(), ex, [&](std::size_t i) {
        double x = src[i];
        if (x < 0) {
            neg.store(true, std::memory_order_relaxed);
            dst[i] = std::numeric_limits<double>::quiet_NaN();
        } else {
            dst[i] = pw(x);
        }
    });
    negative_input = neg.load();
    return !negative_input && all_finite(dst, ex);
}

void multiply_real(std::span<cdouble> dst, std::span<const cdouble> src,
                   std::span<const double> factors, Exec ex) {
    pointwise(src.size(), ex, [&](std::size_t i) { dst[i] = src[i] * factors[i]; });
}

void multiply_complex(std::span<cdouble> dst, std::span<const cdouble> src,
                      std::span<const cdouble> factors, Exec ex) {
    pointwise(src.size(), ex, [&](std::size_t i) { dst[i] = src[i] * factors[i]; });
}

void exchanger_combine(std::span<cdouble> out_u, std::span<cdouble> out_v,
                       std::span<const cdouble> u, std::span<const cdouble> v,
                       std::span<const double> heat,
                       double a0u, double a1u, double a0v, double a1v, Exec ex) {
    pointwise(u.size(), ex, [&](std::size_t i) {
        cdouble ui = u[i], vi = v[i];
        double h = heat[i];
        out_u[i] = h * (a0u * ui + a1u * vi);
        out_v[i] = h * (a0v * ui + a1v * vi);
    });
}

void axpy(std::span<cdouble> dst, std::span<const cdouble> x,
          std::span<const cdouble> y, double c, Exec ex) {
    pointwise(x.size(), ex, [&](std::size_t i) { dst[i] = x[i] + c * y[i]; });
}

void axpy2(std::span<cdouble> dst, std::span<const cdouble> x,
           std::span<const cdouble> y, std::span<const cdouble> z, double c, Exec ex) {
    pointwise(x.size(), ex, [&](std::size_t i) { dst[i] = x[i] + c * (y[i] + z[i]); });
}

void apply_mask(std::span<cdouble> dst, std::span<const unsigned char> mask, Exec ex) {
    pointwise(dst.size(), ex, [&](std::size_t i) {
        if (!mask[i]) dst[i] = cdouble(0.0, 0.0);
    });
}

double sum(std::span<const double> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += src[i];
            return s;
        },
        [](double a, double b) { return a + b; }, 0.0);
}

double sum_abs(std::span<const double> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += std::abs(src[i]);
            return s;
        },
        [](double a, double b) { return a + b; }, 0.0);
}

double sum_sq(std::span<const double> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += src[i] * src[i];
            return s;
        },
        [](double a, double b) { return a + b; }, 0.0);
}

double sum_abs_pow(std::span<const double> src, double m, Exec ex) {
    PowEval pw(m);
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += pw(std::abs(src[i]));
            return s;
        },
        [](double a, double b) { return a + b; }, 0.0);
}

double max_abs(std::span<const double> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s = std::max(s, std::abs(src[i]));
            return s;
        },
        [](double a, double b) { return std::max(a, b); }, 0.0);
}

double min_value(std::span<const double> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = std::numeric_limits<double>::infinity();
            for (std::size_t i = lo; i < hi; ++i) s = std::min(s, src[i]);
            return s;
        },
        [](double a, double b) { return std::min(a, b); },
        std::numeric_limits<double>::infinity());
}

bool all_finite(std::span<const double> src, Exec ex) {
    // max_abs of a NaN-free array is finite iff all entries are; NaN
    // propagates through max(|x|) only if compared first, so test directly.
    double bad = reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                if (!std::isfinite(src[i])) return 1.0;
            return 0.0;
        },
        [](double a, double b) { return std::max(a, b); }, 0.0);
    return bad == 0.0;
}

bool all_finite_complex(std::span<const cdouble> src, Exec ex) {
    double bad = reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                if (!std::isfinite(src[i].real()) || !std::isfinite(src[i].imag()))
                    return 1.0;
            return 0.0;
        },
        [](double a, double b) { return std::max(a, b); }, 0.0);
    return bad == 0.0;
}

double max_abs_complex(std::span<const cdouble> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s = std::max(s, std::abs(src[i]));
            return s;
        },
        [](double a, double b) { return std::max(a, b); }, 0.0);
}

double max_abs_imag(std::span<const cdouble> src, Exec ex) {
    return reduce_chunked(
        src.size(), ex,
        [&](std::size_t lo, std::size_t hi) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s = std::max(s, std::abs(src[i].imag()));
            return s;
        },
        [](double a, double b) { return std::max(a, b); }, 0.0);
}

}  // namespace frex::kernels
