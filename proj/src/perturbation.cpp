#include "sgpert/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "sgpert/kernels.hpp"

namespace sgpert {

namespace {

void require_same_grid(const TimePath& f, const BoundaryFunctional& phi) {
    if (!(f.grid() == phi.grid()) || f.exponent() != phi.exponent())
        throw GridMismatch("path and boundary functional live on different grids");
}

// Phi(f(t_j)) for the first `frames` frames.
std::vector<double> functional_trace(const TimePath& f, const BoundaryFunctional& phi, std::size_t frames) {
    const Grid& g = f.grid();
    std::vector<double> out(frames);
    kernels::parallel::functional_values(f.data().first(frames * g.size()), g.size(), phi.kernel().values(),
                                         phi.window_start(), g.step(), out);
    return out;
}

}  // namespace

void NeumannConfig::validate() const {
    if (!(tol > 0.0)) throw Error("neumann: tol must be positive");
    if (max_terms < 1) throw Error("neumann: max_terms must be >= 1");
    if (tracked.empty()) throw Error("neumann: at least one tracked seminorm index required");
}

GridFunction resolvent_R(const TimePath& f, double t) {
    f.require_vanishing_start("resolvent");
    const std::size_t target = aligned_multiple(t, f.time_step(), "t");
    if (target > f.last_index()) throw DomainError("resolvent: t beyond the path horizon");
    const Grid& g = f.grid();
    std::vector<double> out(g.size(), 0.0), moved(g.size());
    const double dt = f.time_step();
    for (std::size_t j = 0; j <= target && target > 0; ++j) {
        const double w = (j == 0 || j == target) ? 0.5 * dt : dt;
        kernels::shift(f.frame_values(j), (target - j) * f.stride(), moved);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * moved[i];
    }
    return GridFunction(g, f.exponent(), std::move(out));
}

TimePath resolvent_path(const TimePath& f) {
    f.require_vanishing_start("resolvent");
    std::vector<double> out(f.data().size());
    kernels::parallel::superpose_shifts(f.data(), f.grid().size(), f.stride(), f.time_step(), out);
    return TimePath(f.grid(), f.exponent(), f.horizon(), f.time_step(), std::move(out));
}

GridFunction perturb_integral_h(const TimePath& f, double t0, const BoundaryFunctional& phi) {
    require_same_grid(f, phi);
    const Grid& g = f.grid();
    if (!(t0 > 0.0)) throw DomainError("perturbation integral: t0 must be positive");
    if (t0 > g.b() * (1.0 + 1e-12)) throw DomainError("perturbation integral: closed form requires t0 <= b");
    const std::size_t frames = aligned_multiple(t0, f.time_step(), "t0") + 1;
    if (frames > f.frame_count()) throw DomainError("perturbation integral: t0 beyond the path horizon");

    const auto trace = functional_trace(f, phi, frames);
    const auto fine = kernels::refine_linear(trace, f.stride());
    // s in [b - t0, b] reads Phi(f(t0 - b + s)); fine index = i - (m - t0/h_s).
    const std::size_t m = g.cells();
    const std::size_t start = m - (fine.size() - 1);
    std::vector<double> out(g.size(), 0.0);
    for (std::size_t i = start; i <= m; ++i) out[i] = fine[i - start];
    return GridFunction(g, f.exponent(), std::move(out));
}

GridFunction g_primitive(const TimePath& f, const BoundaryFunctional& phi) {
    require_same_grid(f, phi);
    const Grid& g = f.grid();
    const std::size_t frames = aligned_multiple(g.b(), f.time_step(), "b") + 1;
    if (frames > f.frame_count()) throw DomainError("g primitive: path horizon shorter than b");
    const auto trace = functional_trace(f, phi, frames);
    const auto fine = kernels::refine_linear(trace, f.stride());
    // fine[r] = Phi(f(r h_s)); cumulative trapezoid from b down to 0.
    const std::size_t count = fine.size() - 1;
    std::vector<double> tail(fine.size(), 0.0);
    for (std::size_t r = count; r-- > 0;) tail[r] = tail[r + 1] + 0.5 * g.step() * (fine[r] + fine[r + 1]);
    const std::size_t m = g.cells();
    const std::size_t zero = m - count;  // grid index of s = 0
    std::vector<double> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = i <= zero ? tail[0] : tail[i - zero];
    return GridFunction(g, f.exponent(), std::move(out));
}

TimePath rbar_b(const TimePath& f, const BoundaryFunctional& phi) {
    require_same_grid(f, phi);
    f.require_vanishing_start("rbar_b");
    const Grid& g = f.grid();
    auto trace = functional_trace(f, phi, f.frame_count());
    trace.front() = 0.0;  // Phi(f(0)) with f(0) = 0
    const auto fine = kernels::refine_linear(trace, f.stride());
    std::vector<double> out(f.data().size());
    kernels::parallel::assemble_transport({}, fine, f.stride(), g.size(), out);
    return TimePath(g, f.exponent(), f.horizon(), f.time_step(), std::move(out));
}

double effective_contraction(const BoundaryFunctional& phi, double t0) {
    return std::pow(t0, 1.0 / phi.exponent()) * phi.bound();
}

NeumannResult neumann_resolvent(const TimePath& f, const BoundaryFunctional& phi, const NeumannConfig& cfg) {
    cfg.validate();
    require_same_grid(f, phi);
    f.require_vanishing_start("neumann resolvent");
    const double k_eff = effective_contraction(phi, f.horizon());
    if (k_eff >= 1.0)
        throw ContractionError("perturbation too large for horizon: t0^{1/p} K = " + std::to_string(k_eff) +
                               " >= 1; shrink t0");

    TimePath base = resolvent_path(f);
    NeumannResult result{base, 0, false, k_eff, cfg.tracked, {}, {}, {}};
    for (int n : cfg.tracked) {
        const double s = sup_seminorm(base, n);
        result.base_sup.push_back(s);
        result.diagnostics.push_back({0, n, s, s});
    }

    std::vector<double> sum(base.data().begin(), base.data().end());
    TimePath term = std::move(base);
    for (int k = 1; k < cfg.max_terms; ++k) {
        TimePath next = rbar_b(term, phi);
        bool small = true;
        for (std::size_t w = 0; w < cfg.tracked.size(); ++w) {
            const double inc = sup_seminorm(next, cfg.tracked[w]);
            result.diagnostics.push_back({k, cfg.tracked[w], inc, std::pow(k_eff, k) * result.base_sup[w]});
            small = small && inc < cfg.tol;
        }
        if (small) {
            result.converged = true;
            break;
        }
        const auto add = next.data();
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += add[i];
        result.last_term = k;
        term = std::move(next);
    }

    result.sum = TimePath(f.grid(), f.exponent(), f.horizon(), f.time_step(), std::move(sum));
    const double tail = std::pow(k_eff, result.last_term + 1) / (1.0 - k_eff);
    for (double s : result.base_sup) result.error_bound.push_back(tail * s);
    return result;
}

ContractionEstimate estimate_contraction(const BoundaryFunctional& phi, double t0,
                                         std::span<const TimePath> samples, int n) {
    if (samples.empty()) throw Error("contraction estimate: empty sample list");
    ContractionEstimate est;
    est.bound = effective_contraction(phi, t0);
    est.slack = std::pow(1.0 + phi.grid().step() / (2.0 * t0), 1.0 / phi.exponent());
    for (const TimePath& f : samples) {
        const double denom = sup_seminorm(f, n);
        if (denom == 0.0) continue;
        const double num = seminorm(perturb_integral_h(f, t0, phi), n);
        est.ratio = std::max(est.ratio, num / denom);
        ++est.used_samples;
    }
    est.within_bound = est.ratio <= est.bound * est.slack * (1.0 + 1e-12);
    return est;
}

TimePath time_derivative(const TimePath& f, bool vanishing_start) {
    const std::size_t frames = f.frame_count();
    if (frames < 3) throw Error("time derivative needs at least three frames");
    const std::size_t points = f.grid().size();
    const double inv = 1.0 / (2.0 * f.time_step());
    const auto d = f.data();
    std::vector<double> out(d.size());
    auto at = [&](std::size_t j, std::size_t i) { return d[j * points + i]; };
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = vanishing_start ? 0.0 : (-3.0 * at(0, i) + 4.0 * at(1, i) - at(2, i)) * inv;
        for (std::size_t j = 1; j + 1 < frames; ++j) out[j * points + i] = (at(j + 1, i) - at(j - 1, i)) * inv;
        const std::size_t J = frames - 1;
        out[J * points + i] = (3.0 * at(J, i) - 4.0 * at(J - 1, i) + at(J - 2, i)) * inv;
    }
    return TimePath(f.grid(), f.exponent(), f.horizon(), f.time_step(), std::move(out));
}

TimePath apply_generator(const GeneratorSpec& gen, const TimePath& f) {
    std::vector<double> out;
    out.reserve(f.data().size());
    for (std::size_t j = 0; j < f.frame_count(); ++j) {
        const GridFunction a = generator_apply(gen, f.frame(j));
        out.insert(out.end(), a.values().begin(), a.values().end());
    }
    return TimePath(f.grid(), f.exponent(), f.horizon(), f.time_step(), std::move(out));
}

CheckReport dembart_check(const ResolventOperator& resolvent, const GeneratorSpec& gen,
                          std::span<const TimePath> tests, int n, const DembartTolerances& tol) {
    gen.validate();
    double r1 = 0.0, r2 = 0.0, r3 = 0.0, M = 0.0;
    for (const TimePath& f : tests) {
        f.require_vanishing_start("dembart check");
        const TimePath df_raw = time_derivative(f, false);
        // D(D): f'(0) = 0. The one-sided difference is O(h_t^2) accurate, so
        // anything of order h_t relative to the derivative scale is rejected.
        const double df_scale = 1.0 + sup_seminorm(df_raw, n);
        if (seminorm(df_raw.frame(0), n) > std::max(1e-10, f.time_step()) * df_scale)
            throw DomainError("dembart check: test path derivative does not vanish at t = 0");
        for (std::size_t j = 0; j < f.frame_count(); ++j) {
            const GridFunction x = f.frame(j);
            double scale = 1.0;
            for (double v : x.values()) scale = std::max(scale, std::abs(v));
            if (!domain_membership(gen, x, 1e-9 * scale).member)
                throw DomainError("dembart check: a frame is outside the generator's domain");
        }

        const TimePath df = time_derivative(f, true);
        const TimePath af = apply_generator(gen, f);
        const TimePath rf = resolvent(f);

        r1 = std::max(r1, sup_seminorm(resolvent(df - af) - f, n));
        r2 = std::max(r2, sup_seminorm(time_derivative(rf, true) - resolvent(df), n));
        r3 = std::max(r3, sup_seminorm(apply_generator(gen, rf) - resolvent(af), n));
        const double l1 = l1_seminorm(f, n);
        const double sup = sup_seminorm(rf, n);
        if (l1 > 0.0) M = std::max(M, sup / l1);
    }
    CheckReport report("dembart");
    report.add("dembart_i", n, 0.0, r1, tol.resolvent_identity);
    report.add("dembart_ii", n, 0.0, r2, tol.time_commutation);
    report.add("dembart_iii", n, 0.0, r3, tol.space_commutation);
    report.add("dembart_iv", n, 0.0, M, tol.continuity_constant);
    return report;
}

}  // namespace sgpert
