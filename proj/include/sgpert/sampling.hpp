#pragma once

// Seeded generators for test batteries and named data presets.

#include <random>
#include <string_view>
#include <vector>

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"

namespace sgpert {

using Rng = std::mt19937_64;

// Uniform random node values in [-amplitude, amplitude] every `node_spacing`
// (rounded to whole cells), linearly interpolated.
GridFunction random_piecewise_linear(const Grid& grid, double p, Rng& rng, double node_spacing = 0.125,
                                     double amplitude = 1.0);

// f(t) = sum_k sin(w_k t + c_k) x_k with three random piecewise-linear x_k.
// With vanishing_start the phases are zero so f(0) = 0 exactly.
TimePath random_path(const Grid& grid, double p, double horizon, double time_step, Rng& rng,
                     bool vanishing_start = true);

// exp(-2 (s - 1/4)^2) (1 + sin(3 s) / 2).
GridFunction smooth_datum(const Grid& grid, double p);

// f(t, s) = t exp(-(s - 1/2)^2) (1 + 0.3 cos 2s); vanishes at t = 0.
TimePath smooth_forcing(const Grid& grid, double p, double horizon, double time_step);

// Five paths a_k(t) x_k(s) with a_k(0) = a_k'(0) = 0 and x_k(b) = x_k'(b) = 0,
// so every frame lies in the domain of A^2. Given phi, each x_k is replaced
// by compatible_datum(x_k, phi) so the frames lie in the domain of C^2.
std::vector<TimePath> smooth_test_paths(const Grid& grid, double p, double horizon, double time_step,
                                        const BoundaryFunctional* phi = nullptr);

// "zero", "uniform" or "bump"; Error otherwise.
BoundaryFunctional kernel_preset(std::string_view name, const Grid& grid, double p, double scale = 1.0);

}  // namespace sgpert
