// Serial reference kernels against their OpenMP counterparts on a
// representative evolution block (257 frames on a 1281-point grid).

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "sgpert/kernels.hpp"

namespace {

constexpr std::size_t kPoints = 1281;
constexpr std::size_t kFrames = 257;
constexpr double kStep = 1.0 / 256.0;

std::vector<double> block() {
    std::vector<double> v(kPoints * kFrames);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.001 * static_cast<double>(k));
    return v;
}

template <auto Kernel>
void bm_seminorms(benchmark::State& state) {
    const auto data = block();
    std::vector<double> out(kFrames);
    for (auto _ : state) {
        Kernel(data, kPoints, 768, 2.5, kStep, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void bm_functional(benchmark::State& state) {
    const auto data = block();
    std::vector<double> weight(kPoints, 1.0), out(kFrames);
    for (auto _ : state) {
        Kernel(data, kPoints, weight, 768, kStep, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void bm_transport(benchmark::State& state) {
    const auto data = block();
    std::vector<double> inflow(kFrames, 0.5), out(kPoints * kFrames);
    for (auto _ : state) {
        Kernel(std::span<const double>(data).first(kPoints), inflow, 1, kPoints, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void bm_superpose(benchmark::State& state) {
    const std::size_t frames = 33;
    auto data = block();
    data.resize(frames * kPoints);
    std::vector<double> out(data.size());
    for (auto _ : state) {
        Kernel(data, kPoints, 1, kStep, out);
        benchmark::DoNotOptimize(out.data());
    }
}

template <auto Kernel>
void bm_shift_law(benchmark::State& state) {
    const auto data = block();
    const std::span<const double> x(data.data(), kPoints);
    std::vector<std::size_t> steps;
    for (std::size_t k = 0; k <= 512; k += 16) steps.push_back(k);
    const std::vector<std::size_t> firsts{1024, 768, 512};
    std::vector<double> worst(firsts.size());
    for (auto _ : state) {
        Kernel(x, steps, 512, firsts, 2.0, kStep, worst);
        benchmark::DoNotOptimize(worst.data());
    }
}

namespace k = sgpert::kernels;

BENCHMARK(bm_seminorms<k::serial::window_seminorms>)->Name("window_seminorms/serial");
BENCHMARK(bm_seminorms<k::parallel::window_seminorms>)->Name("window_seminorms/parallel");
BENCHMARK(bm_functional<k::serial::functional_values>)->Name("functional_values/serial");
BENCHMARK(bm_functional<k::parallel::functional_values>)->Name("functional_values/parallel");
BENCHMARK(bm_transport<k::serial::assemble_transport>)->Name("assemble_transport/serial");
BENCHMARK(bm_transport<k::parallel::assemble_transport>)->Name("assemble_transport/parallel");
BENCHMARK(bm_superpose<k::serial::superpose_shifts>)->Name("superpose_shifts/serial");
BENCHMARK(bm_superpose<k::parallel::superpose_shifts>)->Name("superpose_shifts/parallel");
BENCHMARK(bm_shift_law<k::serial::shift_law_residuals>)->Name("shift_law_residuals/serial");
BENCHMARK(bm_shift_law<k::parallel::shift_law_residuals>)->Name("shift_law_residuals/parallel");

}  // namespace

BENCHMARK_MAIN();
