#pragma once

#include <functional>
#include <optional>
#include <span>

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"
#include "sgpert/report.hpp"

namespace sgpert {

// (T(t)x)(s) = x(s + t) for s + t < b, 0 otherwise; T(0) is the identity.
// For t > 0 the node at the jump s = b - t holds the right-hand value 0, so
// the trapezoid seminorms never grow under the shift. Times must be
// multiples of the spatial step; the shift is then an exact index shift.
class ShiftSemigroup {
public:
    explicit ShiftSemigroup(Grid grid) : grid_(std::move(grid)) {}

    const Grid& grid() const noexcept { return grid_; }

    GridFunction apply(double t, const GridFunction& x) const;
    GridFunction apply_steps(std::size_t k, const GridFunction& x) const;
    GridFunction operator()(double t, const GridFunction& x) const { return apply(t, x); }

private:
    Grid grid_;
};

// A strongly continuous family acting on grid functions: (t, x) -> U(t)x.
using Evolution = std::function<GridFunction(double, const GridFunction&)>;

enum class GeneratorKind { unperturbed, perturbed };

// A: x' on {x(b) = 0};  C: x' on {x(b) = Phi(x)}.
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::unperturbed;
    std::optional<BoundaryFunctional> functional;
    int stencil_order = 1;

    static GeneratorSpec unperturbed() { return {}; }
    static GeneratorSpec perturbed(BoundaryFunctional phi) {
        return {GeneratorKind::perturbed, std::move(phi), 1};
    }
    void validate() const;
};

// Forward difference (x_{i+1} - x_i)/h. The last row uses a ghost value at
// b + h that satisfies the domain's boundary condition after one step: 0 for
// A, and g = Phi(x(. + h) with g at b) for C. On the domain the stencil
// coincides with (U(h)x - x)/h for the one-step discrete evolution.
GridFunction generator_apply(const GeneratorSpec& gen, const GridFunction& x);

Membership domain_membership(const GeneratorSpec& gen, const GridFunction& x, double tol,
                             double slope_bound = kDefaultSlopeBound);

// Residuals of T(0) = id and T(t + s) = T(t)T(s) relative to p_n(x), for all
// pairs of `times` with t + s <= max(times). Rows: identity / semigroup_law
// per index, bound 1e-12.
CheckReport check_semigroup_axioms(const ShiftSemigroup& T, std::span<const double> times,
                                   std::span<const GridFunction> testset, std::span<const int> indices);

struct EquicontinuityConstants {
    double M = 0.0;
    int q_index = 0;
};

// Empirical M = max p_n(T(t)x) / p_n(x) over the test set and t on the grid
// of [0, t0] with step `sample_step` (0 means the spatial step). 0/0 -> 0.
EquicontinuityConstants equicontinuity_constants(const ShiftSemigroup& T, double t0, int n,
                                                 std::span<const GridFunction> testset,
                                                 double sample_step = 0.0);

// p_n((U(h)x - x)/h - G x) without any domain check.
double generator_defect(const Evolution& evolve, const GeneratorSpec& gen, const GridFunction& x, double h,
                        int n);

// As generator_defect, but DomainError if x fails the membership predicate
// of gen's domain (an invalid generator test, not a numerical failure).
double generator_residual(const Evolution& evolve, const GeneratorSpec& gen, const GridFunction& x, double h,
                          int n, double domain_tol = 1e-9);

}  // namespace sgpert
