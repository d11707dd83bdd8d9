#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"
#include "sgpert/sampling.hpp"

using namespace sgpert;

namespace {

const Grid kGrid(1.0, 4.0, 1.0 / 256.0);

}  // namespace

TEST_SUITE("funcspace") {

TEST_CASE("grid closes exactly at both ends") {
    CHECK(kGrid.cells() == 1280);
    CHECK(kGrid.point(0) == -4.0);
    CHECK(kGrid.point(kGrid.cells()) == 1.0);
    CHECK(kGrid.window_start(1) == 768);
    CHECK(kGrid.window_start(4) == 0);
    CHECK_THROWS_AS(Grid(1.0, 4.0, 0.3), AlignmentError);
    CHECK_THROWS_AS(Grid(1.0, -1.0, 0.25), Error);
    CHECK_THROWS_AS(kGrid.window_start(5), IndexOutOfRange);
    CHECK_THROWS_AS(kGrid.window_start(0), IndexOutOfRange);
    CHECK_THROWS_AS(kGrid.steps(0.001), AlignmentError);
}

TEST_CASE("grid function invariants") {
    CHECK_THROWS_AS(GridFunction(kGrid, 2.0, std::vector<double>(3, 0.0)), GridMismatch);
    CHECK_THROWS_AS(GridFunction(kGrid, 1.0, std::vector<double>(kGrid.size(), 0.0)), Error);
    std::vector<double> bad(kGrid.size(), 0.0);
    bad[7] = std::nan("");
    CHECK_THROWS_AS(GridFunction(kGrid, 2.0, bad), Error);
    const Grid other(1.0, 2.0, 1.0 / 256.0);
    CHECK_THROWS_AS(GridFunction::zero(kGrid, 2.0) + GridFunction::zero(other, 2.0), GridMismatch);
    CHECK_THROWS_AS(GridFunction::zero(kGrid, 2.0) + GridFunction::zero(kGrid, 3.0), GridMismatch);
}

TEST_CASE("seminorm of simple functions") {
    CHECK(seminorm(GridFunction::zero(kGrid, 2.0), 1) == 0.0);
    const auto one = GridFunction::sample(kGrid, 2.0, [](double) { return 1.0; });
    CHECK(seminorm(one, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(seminorm(one, 3) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK_THROWS_AS(seminorm(one, 5), IndexOutOfRange);
}

TEST_CASE("seminorm matches fine Riemann sums at second order") {
    std::mt19937_64 rng(7);
    for (double p : {1.5, 2.0, 3.0}) {
        const auto f = oracle::random_hat_function(-4.0, 1.0, 0.125, rng);
        const double exact = oracle::lp_norm(f, -2.0, 1.0, p, 600000);
        std::vector<double> steps, errors;
        for (int k : {64, 128, 256}) {
            const Grid g(1.0, 4.0, 1.0 / k);
            steps.push_back(g.step());
            errors.push_back(std::abs(seminorm(GridFunction::sample(g, p, f), 2) - exact));
        }
        CHECK(errors.back() < 1e-3);
        for (double order : oracle::orders(steps, errors)) CHECK(order >= 1.8);
    }
}

TEST_CASE("seminorm family is monotone, homogeneous and subadditive") {
    Rng rng(11);
    const SeminormFamily family(kGrid, 2.5, 4);
    CHECK_THROWS_AS(SeminormFamily(kGrid, 2.5, 5), IndexOutOfRange);
    for (int trial = 0; trial < 25; ++trial) {
        const auto x = random_piecewise_linear(kGrid, 2.5, rng);
        const auto y = random_piecewise_linear(kGrid, 2.5, rng);
        const auto all = family.all(x);
        for (std::size_t n = 0; n + 1 < all.size(); ++n) CHECK(all[n] <= all[n + 1]);
        for (int n = 1; n <= 4; ++n) {
            const double px = family(x, n);
            CHECK(family(x * -3.0, n) == doctest::Approx(3.0 * px).epsilon(1e-12));
            CHECK(family(x + y, n) <= (px + family(y, n)) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("sup and L1 lifts") {
    const double t0 = 0.25, h_t = 1.0 / 64.0;
    const auto x = GridFunction::sample(kGrid, 2.0, [](double s) { return std::cos(s); });
    const double px = seminorm(x, 2);
    CHECK(sup_seminorm(TimePath::zero(kGrid, 2.0, t0, h_t), 2) == 0.0);
    CHECK(l1_seminorm(TimePath::zero(kGrid, 2.0, t0, h_t), 2) == 0.0);

    const auto constant = TimePath::sample(kGrid, 2.0, t0, h_t, [](double, double s) { return std::cos(s); });
    CHECK(sup_seminorm(constant, 2) == doctest::Approx(px).epsilon(1e-14));
    CHECK(l1_seminorm(constant, 2) == doctest::Approx(t0 * px).epsilon(1e-13));

    const auto ramp = TimePath::sample(kGrid, 2.0, t0, h_t, [&](double t, double s) { return t / t0 * std::cos(s); });
    CHECK(sup_seminorm(ramp, 2) == doctest::Approx(px).epsilon(1e-13));
    CHECK(l1_seminorm(ramp, 2) == doctest::Approx(0.5 * t0 * px).epsilon(1e-13));

    Rng rng(3);
    for (int k = 0; k < 10; ++k) {
        const auto f = random_path(kGrid, 2.0, t0, h_t, rng, false);
        for (int n = 1; n <= 4; ++n) CHECK(l1_seminorm(f, n) <= t0 * sup_seminorm(f, n) * (1.0 + 1e-12));
    }
}

TEST_CASE("time path alignment and the vanishing start") {
    CHECK_THROWS_AS(TimePath::zero(kGrid, 2.0, 0.25, 0.003), AlignmentError);
    CHECK_THROWS_AS(TimePath::zero(kGrid, 2.0, 0.1, 1.0 / 64.0), AlignmentError);
    const auto path = TimePath::sample(kGrid, 2.0, 0.25, 1.0 / 64.0, [](double t, double s) { return 1.0 + t * s; });
    CHECK(path.stride() == 4);
    CHECK(path.frame_count() == 17);
    CHECK_FALSE(path.starts_at_zero());
    CHECK_THROWS_AS(path.require_vanishing_start("test"), DomainError);
    const auto frames = std::vector<GridFunction>{path.frame(0), path.frame(1)};
    const TimePath rebuilt(1.0 / 64.0, 1.0 / 64.0, frames);
    CHECK(rebuilt.frame(1).values()[100] == path.frame(1).values()[100]);
    CHECK_THROWS_AS(TimePath(0.0, 1.0 / 64.0, std::vector<GridFunction>{}), Error);
}

TEST_CASE("membership in the domain of A") {
    const auto linear = GridFunction::sample(kGrid, 2.0, [](double s) { return 1.0 - s; });
    auto m = in_domain_A(linear, 1e-12);
    CHECK(m.member);
    CHECK(m.residual == 0.0);

    const auto one = GridFunction::sample(kGrid, 2.0, [](double) { return 1.0; });
    m = in_domain_A(one, 1e-12);
    CHECK_FALSE(m.member);
    CHECK(m.residual == 1.0);

    CHECK(in_domain_A(GridFunction::sample(kGrid, 2.0, [](double s) { return (1.0 - s) * (1.0 - s); }), 1e-12).member);

    // A sawtooth at the grid scale has unbounded difference quotients.
    std::vector<double> saw(kGrid.size());
    for (std::size_t i = 0; i < saw.size(); ++i) saw[i] = (i % 2 == 0 ? 100.0 : -100.0);
    saw.back() = 0.0;
    CHECK_FALSE(in_domain_A(GridFunction(kGrid, 2.0, saw), 1e-12).member);
}

TEST_CASE("membership in the domain of C") {
    const auto linear = GridFunction::sample(kGrid, 2.0, [](double s) { return 1.0 - s; });
    CHECK(in_domain_C(linear, BoundaryFunctional::zero(kGrid, 2.0), 1e-12).member);
    CHECK(in_domain_C(GridFunction::zero(kGrid, 2.0), BoundaryFunctional::bump(kGrid, 2.0), 0.0).residual == 0.0);

    // Constant data: x(b) = c and Phi(x) = c * Phi(1), with Phi(1) the kernel mass.
    const auto phi = BoundaryFunctional::bump(kGrid, 2.0, 0.75);
    const double pi = std::acos(-1.0);
    const double mass =
        oracle::simpson([&](double s) { return 0.75 * std::pow(std::sin(pi * (s + 1.0) / 2.0), 2); }, -1.0, 1.0);
    CHECK(mass == doctest::Approx(0.75).epsilon(1e-12));
    for (double c : {0.0, 1.0, -2.0}) {
        const auto x = GridFunction::sample(kGrid, 2.0, [c](double) { return c; });
        const double defect = std::abs(c - c * mass);
        const auto m = in_domain_C(x, phi, 1e-9);
        CHECK(m.residual == doctest::Approx(defect).epsilon(1e-9));
        CHECK(m.member == (defect <= 1e-9));
    }
    const auto unit = BoundaryFunctional::uniform(kGrid, 2.0, 0.5);  // mass (1 + b) * 0.5 = 1
    CHECK(in_domain_C(GridFunction::sample(kGrid, 2.0, [](double) { return 3.0; }), unit, 1e-12).member);
}

}  // TEST_SUITE
