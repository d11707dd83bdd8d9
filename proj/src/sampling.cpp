#include "sgpert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "sgpert/evolve.hpp"

namespace sgpert {

GridFunction random_piecewise_linear(const Grid& grid, double p, Rng& rng, double node_spacing, double amplitude) {
    const std::size_t m = grid.cells();
    const std::size_t gap =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(node_spacing / grid.step())));
    std::uniform_real_distribution<double> draw(-amplitude, amplitude);
    std::vector<double> nodes;
    for (std::size_t i = 0; i <= m + gap; i += gap) nodes.push_back(draw(rng));

    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i <= m; ++i) {
        const std::size_t k = i / gap;
        const double w = static_cast<double>(i % gap) / static_cast<double>(gap);
        v[i] = (1.0 - w) * nodes[k] + w * nodes[k + 1];
    }
    return {grid, p, std::move(v)};
}

TimePath random_path(const Grid& grid, double p, double horizon, double time_step, Rng& rng,
                     bool vanishing_start) {
    std::uniform_real_distribution<double> freq(0.5, 6.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<GridFunction> shapes;
    double w[3], c[3];
    for (int k = 0; k < 3; ++k) {
        shapes.push_back(random_piecewise_linear(grid, p, rng));
        w[k] = freq(rng);
        c[k] = vanishing_start ? 0.0 : phase(rng);
    }
    const std::size_t frames = aligned_multiple(horizon, time_step, "horizon") + 1;
    const std::size_t points = grid.size();
    std::vector<double> data(frames * points, 0.0);
    for (std::size_t j = 0; j < frames; ++j) {
        const double t = static_cast<double>(j) * time_step;
        for (int k = 0; k < 3; ++k) {
            const double a = std::sin(w[k] * t + c[k]);
            const auto x = shapes[static_cast<std::size_t>(k)].values();
            for (std::size_t i = 0; i < points; ++i) data[j * points + i] += a * x[i];
        }
    }
    return {grid, p, horizon, time_step, std::move(data)};
}

GridFunction smooth_datum(const Grid& grid, double p) {
    return GridFunction::sample(grid, p, [](double s) {
        return std::exp(-2.0 * (s - 0.25) * (s - 0.25)) * (1.0 + 0.5 * std::sin(3.0 * s));
    });
}

TimePath smooth_forcing(const Grid& grid, double p, double horizon, double time_step) {
    return TimePath::sample(grid, p, horizon, time_step, [](double t, double s) {
        return t * std::exp(-(s - 0.5) * (s - 0.5)) * (1.0 + 0.3 * std::cos(2.0 * s));
    });
}

std::vector<TimePath> smooth_test_paths(const Grid& grid, double p, double horizon, double time_step,
                                        const BoundaryFunctional* phi) {
    const double b = grid.b();
    const double half_pi = 0.5 * std::numbers::pi;
    const std::vector<std::function<double(double)>> shapes = {
        [b](double s) { return (b - s) * (b - s); },
        [b](double s) { return (b - s) * (b - s) * std::exp(s); },
        [b, half_pi](double s) { return std::pow(std::sin(half_pi * (b - s)), 2); },
        [b](double s) { return (b - s) * (b - s) * std::cos(s); },
        [b](double s) { return (b - s) * (b - s) * (b - s); },
    };
    const std::vector<std::function<double(double)>> amplitudes = {
        [](double t) { return t * t; },
        [](double t) { return t * t * (1.0 + t); },
        [](double t) { return t * t * std::exp(-t); },
        [](double t) { return t * t * t; },
        [](double t) { return t * t * std::cos(t); },
    };
    std::vector<TimePath> paths;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        GridFunction x = GridFunction::sample(grid, p, shapes[k]);
        if (phi != nullptr) x = compatible_datum(x, *phi);
        const auto xv = x.values();
        const auto& a = amplitudes[k];
        paths.push_back(TimePath::sample(grid, p, horizon, time_step, [&](double t, double s) {
            return a(t) * xv[grid.index_of(s)];
        }));
    }
    return paths;
}

BoundaryFunctional kernel_preset(std::string_view name, const Grid& grid, double p, double scale) {
    if (name == "zero") return BoundaryFunctional::zero(grid, p);
    if (name == "uniform") return BoundaryFunctional::uniform(grid, p, scale);
    if (name == "bump") return BoundaryFunctional::bump(grid, p, scale);
    throw Error("unknown kernel preset '" + std::string(name) + "' (expected zero, uniform or bump)");
}

}  // namespace sgpert
