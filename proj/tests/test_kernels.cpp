#include <random>
#include <vector>

#include "doctest.h"

#include "sgpert/kernels.hpp"

namespace k = sgpert::kernels;

namespace {

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> draw(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = draw(rng);
    return v;
}

constexpr std::size_t kPoints = 161;
constexpr std::size_t kFrames = 23;
constexpr double kH = 1.0 / 32.0;

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar helpers") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(k::power_integral(v, 0, 1.0, 1.0) == doctest::Approx(7.5));
    CHECK(k::power_integral(v, 2, 2.0, 0.5) == doctest::Approx(0.25 * (9.0 + 16.0)));
    CHECK(k::dot_integral(v, v, 1, 1.0) == doctest::Approx(2.0 + 9.0 + 8.0));
    CHECK(k::root(8.0, 3.0) == doctest::Approx(2.0));

    std::vector<double> out(4);
    k::shift(v, 0, out);
    CHECK(out == v);
    k::shift(v, 1, out);
    CHECK(out == std::vector<double>{2.0, 3.0, 0.0, 0.0});
    k::shift(v, 9, out);
    CHECK(out == std::vector<double>(4, 0.0));

    const auto fine = k::refine_linear(std::vector<double>{0.0, 4.0, 2.0}, 4);
    CHECK(fine == std::vector<double>{0.0, 1.0, 2.0, 3.0, 4.0, 3.5, 3.0, 2.5, 2.0});
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const auto frames = noise(kPoints * kFrames, 1);
    const auto weight = noise(kPoints, 2);

    SUBCASE("window seminorms") {
        std::vector<double> a(kFrames), b(kFrames);
        k::serial::window_seminorms(frames, kPoints, 40, 2.5, kH, a);
        k::parallel::window_seminorms(frames, kPoints, 40, 2.5, kH, b);
        CHECK(a == b);
    }
    SUBCASE("functional values") {
        std::vector<double> a(kFrames), b(kFrames);
        k::serial::functional_values(frames, kPoints, weight, 96, kH, a);
        k::parallel::functional_values(frames, kPoints, weight, 96, kH, b);
        CHECK(a == b);
    }
    SUBCASE("transport") {
        for (std::size_t stride : {1u, 3u}) {
            const auto inflow = noise((kFrames - 1) * stride + 1, 3);
            const std::span<const double> initial(frames.data(), kPoints);
            std::vector<double> a(kPoints * kFrames), b(kPoints * kFrames);
            k::serial::assemble_transport(initial, inflow, stride, kPoints, a);
            k::parallel::assemble_transport(initial, inflow, stride, kPoints, b);
            CHECK(a == b);
            k::serial::assemble_transport({}, inflow, stride, kPoints, a);
            k::parallel::assemble_transport({}, inflow, stride, kPoints, b);
            CHECK(a == b);
        }
    }
    SUBCASE("superposition") {
        for (std::size_t stride : {1u, 2u, 8u}) {
            std::vector<double> a(frames.size()), b(frames.size());
            k::serial::superpose_shifts(frames, kPoints, stride, 0.1, a);
            k::parallel::superpose_shifts(frames, kPoints, stride, 0.1, b);
            CHECK(a == b);
        }
    }
    SUBCASE("shift law residuals") {
        const std::span<const double> x(frames.data(), kPoints);
        const std::vector<std::size_t> steps{0, 1, 5, 17, 40, 100, 170};
        const std::vector<std::size_t> firsts{128, 96, 0};
        std::vector<double> a(3), b(3);
        k::serial::shift_law_residuals(x, steps, 170, firsts, 2.0, kH, a);
        k::parallel::shift_law_residuals(x, steps, 170, firsts, 2.0, kH, b);
        CHECK(a == b);
        for (double r : a) CHECK(r == 0.0);
    }
}

TEST_CASE("transport reads the initial datum left of the jump and the inflow from it on") {
    const std::vector<double> initial{1.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> inflow{10.0, 11.0, 12.0, 13.0, 14.0, 15.0};
    std::vector<double> out(5 * 3);
    k::serial::assemble_transport(initial, inflow, 2, 5, out);
    CHECK(std::vector<double>(out.begin(), out.begin() + 5) == initial);
    CHECK(std::vector<double>(out.begin() + 5, out.begin() + 10) == std::vector<double>{3.0, 4.0, 10.0, 11.0, 12.0});
    CHECK(std::vector<double>(out.begin() + 10, out.end()) == std::vector<double>{10.0, 11.0, 12.0, 13.0, 14.0});
}

}  // TEST_SUITE
