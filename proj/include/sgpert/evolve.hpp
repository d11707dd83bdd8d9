#pragma once

// The perturbed semigroup S(t) generated by Cx = x' on {x(b) = Phi(x)}:
// Picard iteration on the variation-of-parameters equation, an independent
// method-of-characteristics solver, and cross-checks between them and the
// Neumann-series resolvent.

#include <span>
#include <vector>

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"
#include "sgpert/perturbation.hpp"
#include "sgpert/report.hpp"
#include "sgpert/semigroup.hpp"

namespace sgpert {

struct PicardOptions {
    double tol = 1e-12;
    int max_iter = 100;
    std::vector<int> tracked{1, 2, 3};
    // Target t0^{1/p} K for each window when the horizon must be split.
    double window_contraction = 0.5;
};

struct EvolutionResult {
    TimePath path;
    // Total Picard sweeps over all windows.
    int iterations = 0;
    // Worst final increment per tracked index over all windows.
    std::vector<double> final_increment;
    bool converged = true;
    // Max-over-tracked increment after each sweep of the first window.
    std::vector<double> increment_history;
    std::size_t windows = 1;
    double window_k_eff = 0.0;
};

// S^{(0)}(t)x = T(t)x,
// S^{(k+1)}(t)x = T(t)x + Phi(S^{(k)}(t + s - b)x) on s >= b - t, t > 0.
// When t_final^{1/p} K >= 1 the horizon is split into windows of length t0
// with t0^{1/p} K <= window_contraction and the windows are composed.
// Non-convergence is flagged, not thrown.
EvolutionResult picard_semigroup(const GridFunction& x0, const BoundaryFunctional& phi, double t_final,
                                 double h_t, const PicardOptions& opts = {});

// (h, x) -> S(h)x via Picard with time step h_t.
Evolution perturbed_evolution(const BoundaryFunctional& phi, double h_t, const PicardOptions& opts = {});

struct OracleOptions {
    double damping = 0.5;
    double tol = 1e-12;
    int max_iter = 100;
};

struct OracleSolution {
    TimePath u;
    // Boundary inflow y at the frame times; y(0) = Phi(x0).
    std::vector<double> boundary_trace;
    // y on the spatial-step time grid used for marching.
    std::vector<double> fine_trace;
    // max |y(t) - Phi(u(t, .))| over the marching steps.
    double max_boundary_defect = 0.0;
};

// u(0) = x0; for t > 0, u(t, s) = x0(s + t) for s + t < b and y(t + s - b)
// otherwise, with y(0) = Phi(x0) and the trace y(t) = Phi(u(t, .)) marched on the spatial step. The self-reference through
// u(t, b) = y(t) is resolved with a damped scalar fixed-point iteration;
// ConvergenceError if it stalls.
OracleSolution characteristics_oracle(const GridFunction& x0, const BoundaryFunctional& phi, double t_final,
                                      double h_t, const OracleOptions& opts = {});

// Rows "discrepancy" (per frame and index), "max" and "mean" (per index).
CheckReport compare_solutions(const TimePath& a, const TimePath& b, std::span<const int> indices,
                              double threshold = kUnbounded);

struct CrosscheckResult {
    CheckReport report;
    TimePath neumann;
    TimePath variation;
    NeumannResult series;
    std::vector<int> tracked;
    // p_n^inf(neumann - variation) per tracked index.
    std::vector<double> difference;
};

// R_C f two ways: the Neumann series and int_0^t S(t - s) f(s) ds with S from
// Picard. Rows "crosscheck" per tracked index with bound
// tail + allowance.
CrosscheckResult resolvent_crosscheck(const TimePath& f, const BoundaryFunctional& phi, const NeumannConfig& cfg,
                                      double allowance = kUnbounded);

// base + a e1 + c e2 with e1 = exp(s - b), e2 = (s - b) exp(s - b) chosen so
// that x(b) = Phi(x) and x'(b) = Phi(x') for the second-order difference
// derivative. The result lies in the domain of C^2 up to rounding.
GridFunction compatible_datum(const GridFunction& base, const BoundaryFunctional& phi);

}  // namespace sgpert
