#pragma once

#include <span>
#include <vector>

namespace sgpert {

// Errors at or below this are treated as exact when estimating orders.
inline constexpr double kExactFloor = 1e-12;

// log(e_k / e_{k+1}) / log(h_k / h_{k+1}) for consecutive refinement levels.
// Pairs where both errors are below kExactFloor report +inf (exact at both
// levels); NaN if only the finer one is.
std::vector<double> observed_orders(std::span<const double> steps, std::span<const double> errors);

// Least-squares slope of log e against log h.
double fitted_order(std::span<const double> steps, std::span<const double> errors);

}  // namespace sgpert
