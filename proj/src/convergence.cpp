#include "sgpert/convergence.hpp"

#include <cmath>
#include <limits>

#include "sgpert/error.hpp"

namespace sgpert {

std::vector<double> observed_orders(std::span<const double> steps, std::span<const double> errors) {
    if (steps.size() != errors.size()) throw Error("observed_orders: steps and errors differ in length");
    std::vector<double> orders;
    for (std::size_t k = 0; k + 1 < steps.size(); ++k) {
        const double coarse = errors[k], fine = errors[k + 1];
        if (coarse <= kExactFloor && fine <= kExactFloor) {
            orders.push_back(std::numeric_limits<double>::infinity());
        } else if (fine <= 0.0 || coarse <= 0.0) {
            orders.push_back(std::numeric_limits<double>::quiet_NaN());
        } else {
            orders.push_back(std::log(coarse / fine) / std::log(steps[k] / steps[k + 1]));
        }
    }
    return orders;
}

double fitted_order(std::span<const double> steps, std::span<const double> errors) {
    if (steps.size() != errors.size() || steps.size() < 2) throw Error("fitted_order: need two or more levels");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(steps.size());
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const double x = std::log(steps[k]), y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace sgpert
