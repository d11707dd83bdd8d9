#include "sgpert/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sgpert/kernels.hpp"

namespace sgpert {

namespace {

void require_same_grid(const GridFunction& x, const BoundaryFunctional& phi) {
    if (!(x.grid() == phi.grid()) || x.exponent() != phi.exponent())
        throw GridMismatch("datum and boundary functional live on different grids");
}

struct WindowOutcome {
    std::vector<double> frames;  // (len + 1) x points
    int sweeps = 0;
    bool converged = false;
    std::vector<double> final_increment;
    std::vector<double> history;
};

// Picard sweeps on one window [0, len * h_t] starting from `state`.
WindowOutcome picard_window(std::span<const double> state, const BoundaryFunctional& phi, std::size_t len,
                            std::size_t stride, const std::vector<std::size_t>& firsts, const PicardOptions& opts) {
    const Grid& g = phi.grid();
    const std::size_t points = g.size();
    const std::size_t frames = len + 1;
    const double p = phi.exponent();

    WindowOutcome out;
    out.frames.assign(frames * points, 0.0);
    std::vector<double> inflow(len * stride + 1, 0.0);
    kernels::parallel::assemble_transport(state, inflow, stride, points, out.frames);

    std::vector<double> next(out.frames.size()), diff(out.frames.size()), trace(frames), norms(frames);
    out.final_increment.assign(firsts.size(), 0.0);
    for (int sweep = 1; sweep <= opts.max_iter; ++sweep) {
        kernels::parallel::functional_values(out.frames, points, phi.kernel().values(), phi.window_start(),
                                             g.step(), trace);
        inflow = kernels::refine_linear(trace, stride);
        kernels::parallel::assemble_transport(state, inflow, stride, points, next);
        for (std::size_t i = 0; i < next.size(); ++i) diff[i] = next[i] - out.frames[i];
        out.frames.swap(next);
        out.sweeps = sweep;

        bool small = true;
        double worst = 0.0;
        for (std::size_t w = 0; w < firsts.size(); ++w) {
            kernels::parallel::window_seminorms(diff, points, firsts[w], p, g.step(), norms);
            const double inc = *std::max_element(norms.begin(), norms.end());
            out.final_increment[w] = inc;
            worst = std::max(worst, inc);
            small = small && inc < opts.tol;
        }
        out.history.push_back(worst);
        if (small) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace

EvolutionResult picard_semigroup(const GridFunction& x0, const BoundaryFunctional& phi, double t_final,
                                 double h_t, const PicardOptions& opts) {
    require_same_grid(x0, phi);
    if (opts.max_iter < 1) throw Error("picard: max_iter must be >= 1");
    if (opts.tracked.empty()) throw Error("picard: at least one tracked seminorm index required");
    if (!(opts.window_contraction > 0.0 && opts.window_contraction < 1.0))
        throw Error("picard: window contraction must lie in (0, 1)");
    const Grid& g = x0.grid();
    const std::size_t stride = g.steps(h_t);
    if (stride == 0) throw AlignmentError("picard: h_t must be a positive multiple of h_s");
    const std::size_t total = aligned_multiple(t_final, h_t, "t_final");
    const double p = x0.exponent();
    const double K = phi.bound();

    std::size_t window = std::max<std::size_t>(total, 1);
    if (K > 0.0 && std::pow(t_final, 1.0 / p) * K >= 1.0) {
        const double longest = std::pow(opts.window_contraction / K, p);
        window = static_cast<std::size_t>(std::floor(longest / h_t * (1.0 + 1e-12)));
        if (window == 0) {
            if (std::pow(h_t, 1.0 / p) * K >= 1.0)
                throw ContractionError("picard: h_t^{1/p} K >= 1; the time step is too large for this kernel");
            window = 1;
        }
    }

    std::vector<std::size_t> firsts;
    for (int n : opts.tracked) firsts.push_back(g.window_start(n));

    const std::size_t points = g.size();
    std::vector<double> data((total + 1) * points);
    std::copy(x0.values().begin(), x0.values().end(), data.begin());

    EvolutionResult result{TimePath::zero(g, p, 0.0, h_t), 0, std::vector<double>(firsts.size(), 0.0), true, {}, 0,
                           std::pow(static_cast<double>(window) * h_t, 1.0 / p) * K};
    for (std::size_t start = 0; start < total; start += window) {
        const std::size_t len = std::min(window, total - start);
        const std::span<const double> state(data.data() + start * points, points);
        WindowOutcome w = picard_window(state, phi, len, stride, firsts, opts);
        std::copy(w.frames.begin() + static_cast<std::ptrdiff_t>(points), w.frames.end(),
                  data.begin() + static_cast<std::ptrdiff_t>((start + 1) * points));
        result.iterations += w.sweeps;
        result.converged = result.converged && w.converged;
        for (std::size_t i = 0; i < firsts.size(); ++i)
            result.final_increment[i] = std::max(result.final_increment[i], w.final_increment[i]);
        if (result.windows == 0) result.increment_history = std::move(w.history);
        ++result.windows;
    }
    result.windows = std::max<std::size_t>(result.windows, 1);
    result.path = TimePath(g, p, t_final, h_t, std::move(data));
    return result;
}

Evolution perturbed_evolution(const BoundaryFunctional& phi, double h_t, const PicardOptions& opts) {
    return [phi, h_t, opts](double t, const GridFunction& x) {
        const EvolutionResult r = picard_semigroup(x, phi, t, h_t, opts);
        if (!r.converged) throw ConvergenceError("perturbed evolution: Picard iteration did not converge");
        return r.path.frame(r.path.last_index());
    };
}

OracleSolution characteristics_oracle(const GridFunction& x0, const BoundaryFunctional& phi, double t_final,
                                      double h_t, const OracleOptions& opts) {
    require_same_grid(x0, phi);
    if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw Error("oracle: damping must lie in (0, 1]");
    const Grid& g = x0.grid();
    const std::size_t stride = g.steps(h_t);
    if (stride == 0) throw AlignmentError("oracle: h_t must be a positive multiple of h_s");
    const std::size_t total = aligned_multiple(t_final, h_t, "t_final");
    const std::size_t steps = total * stride;
    const std::size_t m = g.cells();
    const std::size_t first = phi.window_start();
    const double h = g.step();
    const auto x = x0.values();
    const auto k = phi.kernel().values();

    // Quadrature weights of Phi on [-1, b].
    std::vector<double> wk(g.size(), 0.0);
    for (std::size_t i = first; i <= m; ++i) wk[i] = (i == first || i == m ? 0.5 * h : h) * k[i];
    const double self = wk[m];

    OracleSolution sol{TimePath::zero(g, x0.exponent(), 0.0, h_t), {}, std::vector<double>(steps + 1, 0.0), 0.0};
    auto& y = sol.fine_trace;
    y[0] = phi(x0);
    for (std::size_t r = 1; r <= steps; ++r) {
        // Boundary first: everything except u(t_r, b) is known already.
        double known = 0.0;
        for (std::size_t i = first; i < m; ++i) known += wk[i] * (i + r < m ? x[i + r] : y[i + r - m]);
        double value = y[r - 1];
        bool settled = false;
        for (int it = 0; it < opts.max_iter; ++it) {
            const double next = (1.0 - opts.damping) * value + opts.damping * (known + self * value);
            const double change = std::abs(next - value);
            value = next;
            if (change <= opts.tol * std::max(1.0, std::abs(value))) {
                settled = true;
                break;
            }
        }
        if (!settled)
            throw ConvergenceError("oracle: boundary fixed point did not converge; halve h_t");
        y[r] = value;
        sol.max_boundary_defect = std::max(sol.max_boundary_defect, std::abs(value - (known + self * value)));
    }

    const std::size_t points = g.size();
    std::vector<double> data((total + 1) * points);
    for (std::size_t j = 0; j <= total; ++j) {
        const std::size_t r = j * stride;
        for (std::size_t i = 0; i < points; ++i)
            data[j * points + i] = r == 0 ? x[i] : (i + r < m ? x[i + r] : y[i + r - m]);
        sol.boundary_trace.push_back(y[r]);
    }
    sol.u = TimePath(g, x0.exponent(), t_final, h_t, std::move(data));
    return sol;
}

CheckReport compare_solutions(const TimePath& a, const TimePath& b, std::span<const int> indices,
                              double threshold) {
    a.require_conforming(b);
    const TimePath diff = a - b;
    CheckReport report("comparison");
    for (int n : indices) {
        const auto norms = frame_seminorms(diff, n);
        double worst = 0.0, mean = 0.0;
        for (std::size_t j = 0; j < norms.size(); ++j) {
            report.add("discrepancy", n, diff.time(j), norms[j], threshold);
            worst = std::max(worst, norms[j]);
            mean += norms[j];
        }
        mean /= static_cast<double>(norms.size());
        report.add("max", n, diff.horizon(), worst, threshold);
        report.add("mean", n, diff.horizon(), mean, threshold);
    }
    return report;
}

CrosscheckResult resolvent_crosscheck(const TimePath& f, const BoundaryFunctional& phi, const NeumannConfig& cfg,
                                      double allowance) {
    NeumannResult series = neumann_resolvent(f, phi, cfg);

    const Grid& g = f.grid();
    const std::size_t points = g.size();
    const std::size_t J = f.last_index();
    const double dt = f.time_step();
    PicardOptions opts;
    opts.tol = std::min(1e-12, cfg.tol);
    opts.tracked = cfg.tracked;

    // int_0^{t_i} S(t_i - s) f(s) ds by the trapezoid rule over s_j <= t_i.
    std::vector<double> acc((J + 1) * points, 0.0);
    for (std::size_t j = 0; j <= J; ++j) {
        const GridFunction fj = f.frame(j);
        if (fj.is_zero()) continue;
        const EvolutionResult evo = picard_semigroup(fj, phi, static_cast<double>(J - j) * dt, dt, opts);
        if (!evo.converged) throw ConvergenceError("resolvent cross-check: Picard iteration did not converge");
        for (std::size_t i = std::max<std::size_t>(j, 1); i <= J; ++i) {
            const double w = (j == 0 || j == i) ? 0.5 * dt : dt;
            const auto src = evo.path.frame_values(i - j);
            double* dst = acc.data() + i * points;
            for (std::size_t s = 0; s < points; ++s) dst[s] += w * src[s];
        }
    }
    TimePath variation(g, f.exponent(), f.horizon(), dt, std::move(acc));

    CrosscheckResult out{CheckReport("resolvent_crosscheck"), series.sum, variation, series, cfg.tracked, {}};
    const TimePath diff = series.sum - variation;
    for (std::size_t w = 0; w < cfg.tracked.size(); ++w) {
        const int n = cfg.tracked[w];
        const auto norms = frame_seminorms(diff, n);
        const auto at = std::max_element(norms.begin(), norms.end());
        out.difference.push_back(*at);
        const double bound = series.error_bound[w] + allowance;
        out.report.add("crosscheck", n, diff.time(static_cast<std::size_t>(at - norms.begin())), *at, bound);
    }
    return out;
}

GridFunction compatible_datum(const GridFunction& base, const BoundaryFunctional& phi) {
    require_same_grid(base, phi);
    const Grid& g = base.grid();
    const double b = g.b();
    const GridFunction e1 = GridFunction::sample(g, base.exponent(), [b](double s) { return std::exp(s - b); });
    const GridFunction e2 =
        GridFunction::sample(g, base.exponent(), [b](double s) { return (s - b) * std::exp(s - b); });

    // Second-order difference derivative: centered inside, one-sided at ends.
    auto derivative = [&](const GridFunction& x) {
        const auto v = x.values();
        const std::size_t m = g.cells();
        const double inv = 1.0 / (2.0 * g.step());
        std::vector<double> d(v.size());
        d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv;
        for (std::size_t i = 1; i < m; ++i) d[i] = (v[i + 1] - v[i - 1]) * inv;
        d[m] = (3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) * inv;
        return GridFunction(g, x.exponent(), std::move(d));
    };
    // Boundary defects: value x(b) - Phi(x), slope x'(b) - Phi(x').
    auto defects = [&](const GridFunction& x) {
        const GridFunction dx = derivative(x);
        return std::pair{x.boundary_value() - phi(x), dx.boundary_value() - phi(dx)};
    };
    const auto [v0, s0] = defects(base);
    const auto [v1, s1] = defects(e1);
    const auto [v2, s2] = defects(e2);
    const double det = v1 * s2 - v2 * s1;
    if (std::abs(det) < 1e-14) throw DomainError("compatible datum: correction system is singular for this kernel");
    const double a = (-v0 * s2 + v2 * s0) / det;
    const double c = (-v1 * s0 + v0 * s1) / det;
    return base + e1 * a + e2 * c;
}

}  // namespace sgpert
