#include "sgpert/semigroup.hpp"

#include <algorithm>
#include <cmath>

#include "sgpert/kernels.hpp"

namespace sgpert {

GridFunction ShiftSemigroup::apply(double t, const GridFunction& x) const {
    if (t < 0.0) throw Error("shift semigroup: t must be non-negative");
    return apply_steps(grid_.steps(t), x);
}

GridFunction ShiftSemigroup::apply_steps(std::size_t k, const GridFunction& x) const {
    if (!(x.grid() == grid_)) throw GridMismatch("shift semigroup applied on a different grid");
    std::vector<double> out(x.size());
    kernels::shift(x.values(), k, out);
    return GridFunction(grid_, x.exponent(), std::move(out));
}

void GeneratorSpec::validate() const {
    if (stencil_order != 1) throw Error("generator: only the first-order forward stencil is available");
    if (kind == GeneratorKind::perturbed && !functional)
        throw Error("generator: perturbed kind requires a boundary functional");
}

GridFunction generator_apply(const GeneratorSpec& gen, const GridFunction& x) {
    gen.validate();
    const auto v = x.values();
    const double h = x.grid().step();
    const std::size_t m = x.grid().cells();
    double ghost = 0.0;
    if (gen.kind == GeneratorKind::perturbed) {
        const BoundaryFunctional& phi = *gen.functional;
        phi.require_compatible(x);
        // g = Phi(y) + w_b g with y = x(. + h) on [-L, b - h] and y(b) = 0.
        std::vector<double> moved(v.begin() + 1, v.end());
        moved.push_back(0.0);
        ghost = phi.apply(moved) / (1.0 - phi.boundary_weight());
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < m; ++i) out[i] = (v[i + 1] - v[i]) / h;
    out[m] = (ghost - v[m]) / h;
    return GridFunction(x.grid(), x.exponent(), std::move(out));
}

Membership domain_membership(const GeneratorSpec& gen, const GridFunction& x, double tol, double slope_bound) {
    gen.validate();
    if (gen.kind == GeneratorKind::perturbed) return in_domain_C(x, *gen.functional, tol, slope_bound);
    return in_domain_A(x, tol, slope_bound);
}

CheckReport check_semigroup_axioms(const ShiftSemigroup& T, std::span<const double> times,
                                   std::span<const GridFunction> testset, std::span<const int> indices) {
    constexpr double kBound = 1e-12;
    const Grid& grid = T.grid();
    std::vector<std::size_t> steps;
    steps.reserve(times.size());
    for (double t : times) {
        if (t < 0.0) throw Error("semigroup check: negative time");
        steps.push_back(grid.steps(t));
    }
    const std::size_t max_total = steps.empty() ? 0 : *std::max_element(steps.begin(), steps.end());
    std::vector<std::size_t> firsts;
    for (int n : indices) firsts.push_back(grid.window_start(n));

    std::vector<double> identity(indices.size(), 0.0);
    std::vector<double> law(indices.size(), 0.0);
    std::vector<double> worst(indices.size());
    for (const GridFunction& x : testset) {
        if (!(x.grid() == grid)) throw GridMismatch("semigroup check: test function on a different grid");
        const GridFunction same = T.apply_steps(0, x);
        const GridFunction defect = same - x;
        for (std::size_t w = 0; w < indices.size(); ++w) {
            const double norm = seminorm(x, indices[w]);
            const double r = seminorm(defect, indices[w]);
            identity[w] = std::max(identity[w], norm > 0.0 ? r / norm : r);
        }
        kernels::parallel::shift_law_residuals(x.values(), steps, max_total, firsts, x.exponent(), grid.step(),
                                               worst);
        for (std::size_t w = 0; w < indices.size(); ++w) law[w] = std::max(law[w], worst[w]);
    }

    CheckReport report("semigroup");
    const double horizon = static_cast<double>(max_total) * grid.step();
    for (std::size_t w = 0; w < indices.size(); ++w) {
        report.add("identity", indices[w], 0.0, identity[w], kBound);
        report.add("semigroup_law", indices[w], horizon, law[w], kBound);
    }
    return report;
}

EquicontinuityConstants equicontinuity_constants(const ShiftSemigroup& T, double t0, int n,
                                                 std::span<const GridFunction> testset, double sample_step) {
    if (testset.empty()) throw Error("equicontinuity: empty test set");
    const Grid& grid = T.grid();
    const double step = sample_step > 0.0 ? sample_step : grid.step();
    const std::size_t stride = grid.steps(step);
    if (stride == 0) throw AlignmentError("equicontinuity: sample step must be positive");
    const std::size_t samples = aligned_multiple(t0, step, "t0");
    const std::size_t first = grid.window_start(n);

    EquicontinuityConstants result{0.0, n};
    std::vector<double> moved(grid.size());
    for (const GridFunction& x : testset) {
        if (!(x.grid() == grid)) throw GridMismatch("equicontinuity: test function on a different grid");
        const double norm = kernels::window_seminorm(x.values(), first, x.exponent(), grid.step());
        if (norm == 0.0) continue;  // 0/0 counts as 0
        for (std::size_t j = 0; j <= samples; ++j) {
            kernels::shift(x.values(), j * stride, moved);
            const double r = kernels::window_seminorm(moved, first, x.exponent(), grid.step()) / norm;
            result.M = std::max(result.M, r);
        }
    }
    return result;
}

double generator_defect(const Evolution& evolve, const GeneratorSpec& gen, const GridFunction& x, double h,
                        int n) {
    if (!(h > 0.0)) throw Error("generator residual: h must be positive");
    x.grid().steps(h);
    const GridFunction moved = evolve(h, x);
    const GridFunction quotient = (moved - x) * (1.0 / h);
    return seminorm(quotient - generator_apply(gen, x), n);
}

double generator_residual(const Evolution& evolve, const GeneratorSpec& gen, const GridFunction& x, double h,
                          int n, double domain_tol) {
    const Membership m = domain_membership(gen, x, domain_tol);
    if (!m.member) throw DomainError("generator residual: x is outside the generator's domain");
    return generator_defect(evolve, gen, x, h, n);
}

}  // namespace sgpert
