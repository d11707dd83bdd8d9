#include "sgpert/boundary_functional.hpp"

#include <cmath>
#include <numbers>

#include "sgpert/kernels.hpp"

namespace sgpert {

namespace {

std::size_t kernel_window(const Grid& grid) {
    if (grid.left_extent() < 1.0) throw Error("boundary functional needs L >= 1 (kernel support [-1, b])");
    return grid.window_start(1);
}

}  // namespace

BoundaryFunctional::BoundaryFunctional(GridFunction kernel)
    : kernel_(std::move(kernel)), first_(kernel_window(kernel_.grid())), bound_(0.0) {
    const auto k = kernel_.values();
    for (std::size_t i = 0; i < first_; ++i)
        if (k[i] != 0.0) throw DomainError("kernel must vanish left of -1");
    bound_ = kernels::root(kernels::power_integral(k, first_, conjugate_exponent(), grid().step()),
                           conjugate_exponent());
}

BoundaryFunctional BoundaryFunctional::zero(const Grid& grid, double p) {
    return BoundaryFunctional(GridFunction::zero(grid, p));
}

BoundaryFunctional BoundaryFunctional::uniform(const Grid& grid, double p, double scale) {
    return BoundaryFunctional(GridFunction::sample(grid, p, [&](double s) { return s >= -1.0 ? scale : 0.0; }));
}

BoundaryFunctional BoundaryFunctional::bump(const Grid& grid, double p, double scale) {
    const double width = grid.b() + 1.0;
    return BoundaryFunctional(GridFunction::sample(grid, p, [&](double s) {
        if (s < -1.0) return 0.0;
        const double v = std::sin(std::numbers::pi * (s + 1.0) / width);
        return scale * v * v;
    }));
}

double BoundaryFunctional::conjugate_exponent() const noexcept {
    const double p = kernel_.exponent();
    return p / (p - 1.0);
}

double BoundaryFunctional::boundary_weight() const noexcept {
    return 0.5 * grid().step() * kernel_.boundary_value();
}

void BoundaryFunctional::require_compatible(const GridFunction& x) const {
    if (!(x.grid() == grid())) throw GridMismatch("functional and argument live on different grids");
}

double BoundaryFunctional::operator()(const GridFunction& x) const {
    require_compatible(x);
    return apply(x.values());
}

double BoundaryFunctional::apply(std::span<const double> values) const {
    return kernels::dot_integral(values, kernel_.values(), first_, grid().step());
}

double phi_apply(const BoundaryFunctional& phi, const GridFunction& x) { return phi(x); }

Membership in_domain_C(const GridFunction& x, const BoundaryFunctional& phi, double tol, double slope_bound) {
    Membership m;
    m.residual = std::abs(x.boundary_value() - phi(x));
    m.max_difference_quotient = max_difference_quotient(x);
    m.member = m.residual <= tol && m.max_difference_quotient <= slope_bound;
    return m;
}

}  // namespace sgpert
