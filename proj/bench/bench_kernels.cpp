// Serial versus OpenMP kernel comparison. Run with --benchmark_filter to
// focus on one kernel; sizes cover the grids the solver actually uses.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "frex/fft.hpp"
#include "frex/kernels.hpp"

namespace k = frex::kernels;
using frex::Exec;

namespace {

std::vector<double> values(std::size_t n) {
    std::vector<double> v(n);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double& x : v) x = dist(rng);
    return v;
}

std::vector<k::cdouble> cvalues(std::size_t n) {
    auto re = values(n);
    std::vector<k::cdouble> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = {re[i], -re[i]};
    return v;
}

template <Exec ex>
void bm_pow4(benchmark::State& state) {
    auto src = values(static_cast<std::size_t>(state.range(0)));
    std::vector<double> dst(src.size());
    for (auto _ : state) {
        k::pow_signed(dst, src, 4.0, ex);
        benchmark::DoNotOptimize(dst.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec ex>
void bm_sum(benchmark::State& state) {
    auto src = values(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(k::sum(src, ex));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec ex>
void bm_exchanger_combine(benchmark::State& state) {
    std::size_t n = static_cast<std::size_t>(state.range(0));
    auto u = cvalues(n), v = cvalues(n);
    auto heat = values(n);
    std::vector<k::cdouble> ou(n), ov(n);
    for (auto _ : state) {
        k::exchanger_combine(ou, ov, u, v, heat, 0.75, 0.25, 0.25, 0.75, ex);
        benchmark::DoNotOptimize(ou.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Exec ex>
void bm_fft_2d(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    auto data = cvalues(static_cast<std::size_t>(n) * n);
    const int dims[] = {n, n};
    for (auto _ : state) {
        frex::fft::transform_nd(data, dims, -1, ex);
        benchmark::DoNotOptimize(data.data());
    }
}

void bm_fft_1d(benchmark::State& state) {
    auto data = cvalues(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        frex::fft::transform(data, -1);
        benchmark::DoNotOptimize(data.data());
    }
}

}  // namespace

BENCHMARK(bm_pow4<Exec::Serial>)->Range(1 << 13, 1 << 21);
BENCHMARK(bm_pow4<Exec::Parallel>)->Range(1 << 13, 1 << 21);
BENCHMARK(bm_sum<Exec::Serial>)->Range(1 << 13, 1 << 21);
BENCHMARK(bm_sum<Exec::Parallel>)->Range(1 << 13, 1 << 21);
BENCHMARK(bm_exchanger_combine<Exec::Serial>)->Range(1 << 13, 1 << 19);
BENCHMARK(bm_exchanger_combine<Exec::Parallel>)->Range(1 << 13, 1 << 19);
BENCHMARK(bm_fft_2d<Exec::Serial>)->Arg(256)->Arg(512);
BENCHMARK(bm_fft_2d<Exec::Parallel>)->Arg(256)->Arg(512);
BENCHMARK(bm_fft_1d)->Arg(1024)->Arg(4096)->Arg(8192);

BENCHMARK_MAIN();
