#include "vwl/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

using namespace vwl::kernels;

namespace {

struct Input {
    std::vector<cplx> f, df, g;
};

Input make_input(std::size_t n) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> nd;
    Input in{std::vector<cplx>(n), std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        in.f[i] = {nd(rng), nd(rng)};
        in.df[i] = {nd(rng), nd(rng)};
        in.g[i] = {nd(rng), nd(rng)};
    }
    return in;
}

void BM_sq_diff_serial(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<double> out(in.f.size());
    for (auto _ : st) {
        sq_diff_direct(in.f, in.df, 0.01, out, Exec::serial);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_sq_diff_parallel(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<double> out(in.f.size());
    for (auto _ : st) {
        sq_diff_direct(in.f, in.df, 0.01, out, Exec::parallel);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_sq_diff_convolution(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<double> out(in.f.size());
    for (auto _ : st) {
        sq_diff_convolution(in.f, in.df, 0.01, out);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_commutator_serial(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<cplx> out(in.f.size());
    for (auto _ : st) {
        commutator_direct(in.f, in.df, in.g, 0.01, out, Exec::serial);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_commutator_parallel(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<cplx> out(in.f.size());
    for (auto _ : st) {
        commutator_direct(in.f, in.df, in.g, 0.01, out, Exec::parallel);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_commutator_convolution(benchmark::State& st) {
    const auto in = make_input(st.range(0));
    std::vector<cplx> out(in.f.size());
    for (auto _ : st) {
        commutator_convolution(in.f, in.df, in.g, 0.01, out);
        benchmark::DoNotOptimize(out.data());
    }
}

}  // namespace

BENCHMARK(BM_sq_diff_serial)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sq_diff_parallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sq_diff_convolution)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_commutator_serial)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_commutator_parallel)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_commutator_convolution)->RangeMultiplier(4)->Range(1 << 10, 1 << 14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
