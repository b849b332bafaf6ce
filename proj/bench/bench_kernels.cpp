// Benchmarks comparing the parallel kernels against the serial reference
// implementations they are tested with.

#include <benchmark/benchmark.h>

#include <random>

#include "mildtf/gabor.hpp"
#include "mildtf/gsp.hpp"
#include "mildtf/mild.hpp"
#include "mildtf/ref.hpp"
#include "mildtf/transforms.hpp"

namespace {

using namespace mildtf;

FiniteSignal random_signal(const GridModel& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    FiniteSignal f = zeros(grid);
    for (std::int64_t n = 0; n < grid.N; ++n) {
        f[n] = cplx(u(rng), u(rng));
    }
    return f;
}

void BM_fourier_fft(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fourier(f));
    }
}
BENCHMARK(BM_fourier_fft)->Arg(16)->Arg(32);

void BM_fourier_reference(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::fourier(f));
    }
}
BENCHMARK(BM_fourier_reference)->Arg(16)->Arg(32);

void BM_stft_parallel(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 2);
    const FiniteSignal w = gaussian(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(stft(f, w));
    }
}
BENCHMARK(BM_stft_parallel)->Arg(8)->Arg(12);

void BM_stft_reference(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 2);
    const FiniteSignal w = gaussian(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ref::stft(f, w));
    }
}
BENCHMARK(BM_stft_reference)->Arg(8)->Arg(12);

void BM_frame_operator(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const GaborSystem sys = make_gabor_system(gaussian(g), g.L / 2, g.L);
    const FiniteSignal f = random_signal(g, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(frame_operator(sys, f));
    }
}
BENCHMARK(BM_frame_operator)->Arg(16)->Arg(32);

void BM_convolve(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 4);
    const FiniteSignal h = random_signal(g, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(convolve(f, h));
    }
}
BENCHMARK(BM_convolve)->Arg(16)->Arg(32);

void BM_autocorrelation(benchmark::State& state) {
    const GridModel g = make_grid(8);
    const GspEnsemble e =
        simulate(CovarianceSpec::white(g, 1.0), state.range(0), 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(autocorrelation(e));
    }
}
BENCHMARK(BM_autocorrelation)->Arg(256)->Arg(1024);

void BM_s0_norm(benchmark::State& state) {
    const GridModel g = make_grid(state.range(0));
    const FiniteSignal f = random_signal(g, 7);
    const FiniteSignal w = gaussian(g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(s0_norm(f, w));
    }
}
BENCHMARK(BM_s0_norm)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
