#pragma once

#include <cstddef>
#include <span>

#include "sgpert/funcspace.hpp"

namespace sgpert {

// Continuous linear functional Phi(x) = int_{-1}^{b} x(s) k(s) ds given by an
// L^q density k supported in [-1, b] (no atoms). The bound constant
// K = ||k||_{L^q[-1,b]} is computed with the same trapezoid weights as p_1, so
// the discrete Hoelder inequality |Phi(x)| <= K p_1(x) holds exactly.
class BoundaryFunctional {
public:
    // DomainError if the kernel is nonzero left of -1; Error if L < 1.
    explicit BoundaryFunctional(GridFunction kernel);

    static BoundaryFunctional zero(const Grid& grid, double p);
    // k = scale on [-1, b].
    static BoundaryFunctional uniform(const Grid& grid, double p, double scale = 1.0);
    // k(s) = scale * sin^2(pi (s + 1) / (b + 1)) on [-1, b]; vanishes at both ends.
    static BoundaryFunctional bump(const Grid& grid, double p, double scale = 1.0);

    double operator()(const GridFunction& x) const;
    // Same as operator() on raw samples of the kernel's grid.
    double apply(std::span<const double> values) const;

    const GridFunction& kernel() const noexcept { return kernel_; }
    const Grid& grid() const noexcept { return kernel_.grid(); }
    double exponent() const noexcept { return kernel_.exponent(); }
    double conjugate_exponent() const noexcept;
    double bound() const noexcept { return bound_; }
    std::size_t window_start() const noexcept { return first_; }
    // Coefficient of x(b) in the quadrature of Phi(x).
    double boundary_weight() const noexcept;
    bool is_zero() const noexcept { return bound_ == 0.0; }

    void require_compatible(const GridFunction& x) const;

private:
    GridFunction kernel_;
    std::size_t first_;
    double bound_;
};

double phi_apply(const BoundaryFunctional& phi, const GridFunction& x);

// x(b) = Phi(x) within tol and bounded difference quotients.
Membership in_domain_C(const GridFunction& x, const BoundaryFunctional& phi, double tol,
                       double slope_bound = kDefaultSlopeBound);

}  // namespace sgpert
