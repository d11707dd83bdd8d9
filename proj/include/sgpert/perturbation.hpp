#pragma once

// Boundary perturbation of the shift semigroup: closed forms of the smoothing
// integrals int T_{-1}(t - s) B f(s) ds, the generalized resolvent
// (R f)(t) = int_0^t T(t - s) f(s) ds, and the Neumann series
// R_C f = sum_k (Rbar B)^k R f for the perturbed generator.
//
// The extrapolated operators B and T_{-1} never appear on their own; only the
// X-valued closed forms do:
//
//   [int_0^t T_{-1}(t - s) B f(s) ds](s') = Phi(f(t + s' - b))   for s' >= b - t
//                                         = 0                     otherwise.
//
// Off-grid times t + s' - b (possible when h_t > h_s) use linear
// interpolation of t -> Phi(f(t)) between frames.

#include <functional>
#include <span>
#include <vector>

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"
#include "sgpert/report.hpp"
#include "sgpert/semigroup.hpp"

namespace sgpert {

struct NeumannConfig {
    double tol = 1e-10;
    int max_terms = 64;
    std::vector<int> tracked{1, 2, 3};

    void validate() const;
};

struct NeumannTerm {
    int term = 0;
    int n = 0;
    double increment = 0.0;
    // K_eff^term * p_n^inf(R f).
    double bound = 0.0;
};

struct NeumannResult {
    TimePath sum;
    // Index N of the last term included in the partial sum.
    int last_term = 0;
    bool converged = false;
    double k_eff = 0.0;
    std::vector<int> tracked;
    // p_n^inf(R f) per tracked index.
    std::vector<double> base_sup;
    // K_eff^{N+1} / (1 - K_eff) * p_n^inf(R f) per tracked index.
    std::vector<double> error_bound;
    std::vector<NeumannTerm> diagnostics;
};

// (R f)(t) for a single grid-aligned t in [0, horizon]. Requires f(0) = 0.
GridFunction resolvent_R(const TimePath& f, double t);
// All frames of R f; frame 0 is zero.
TimePath resolvent_path(const TimePath& f);

// Closed form of int_0^{t0} T_{-1}(t0 - t) B f(t) dt:
//   Phi(f(t0 - b + s)) on [b - t0, b], 0 left of it.
// DomainError if t0 > b or t0 exceeds the path horizon.
GridFunction perturb_integral_h(const TimePath& f, double t0, const BoundaryFunctional& phi);

// g(s) = int_s^b Phi(f(r)) dr on [0, b], g(s) = g(0) for s < 0.
// DomainError if the path horizon is shorter than b.
GridFunction g_primitive(const TimePath& f, const BoundaryFunctional& phi);

// Frame t of (Rbar B f): Phi(f(t + s - b)) for s >= b - t, 0 otherwise.
// Requires f(0) = 0; the output path also vanishes at 0.
TimePath rbar_b(const TimePath& f, const BoundaryFunctional& phi);

// t0^{1/p} * K.
double effective_contraction(const BoundaryFunctional& phi, double t0);

// Partial sum of the Neumann series on the horizon of f. Stops once every
// tracked p_n^inf of the next term is below tol (that term is not added) or
// after max_terms terms (converged = false). ContractionError if K_eff >= 1.
NeumannResult neumann_resolvent(const TimePath& f, const BoundaryFunctional& phi, const NeumannConfig& cfg);

struct ContractionEstimate {
    double ratio = 0.0;
    double bound = 0.0;
    // Multiplicative quadrature allowance: (1 + h_s / (2 t0))^{1/p}. The
    // trapezoid weight of the left endpoint of [b - t0, b] is where a path
    // with f(0) != 0 can exceed the continuous bound.
    double slack = 1.0;
    std::size_t used_samples = 0;
    bool within_bound = true;
};

// max over samples of p_n(perturb_integral_h(f, t0)) / p_n^inf(f), skipping
// samples with p_n^inf(f) = 0. Error on an empty sample list.
ContractionEstimate estimate_contraction(const BoundaryFunctional& phi, double t0,
                                         std::span<const TimePath> samples, int n);

using ResolventOperator = std::function<TimePath(const TimePath&)>;

// d/dt with centered differences, second-order one-sided at the ends. With
// vanishing_start the first frame is set to zero: on D(D) the derivative
// vanishes at 0 by definition.
TimePath time_derivative(const TimePath& f, bool vanishing_start = true);
// Framewise generator stencil.
TimePath apply_generator(const GeneratorSpec& gen, const TimePath& f);

struct DembartTolerances {
    double resolvent_identity = kUnbounded;   // (i)
    double time_commutation = kUnbounded;     // (ii)
    double space_commutation = kUnbounded;    // (iii)
    double continuity_constant = kUnbounded;  // (iv)
};

// Residuals of the generalized-resolvent conditions on test paths in
// D(D) and D(A):
//   dembart_i    p_n^inf(R (D - A) f - f)
//   dembart_ii   p_n^inf(D R f - R D f)
//   dembart_iii  p_n^inf(A R f - R A f)
//   dembart_iv   smallest M with p_n^inf(R f) <= M p_n^1(f)
// DomainError if a test path is outside the discrete domain.
CheckReport dembart_check(const ResolventOperator& resolvent, const GeneratorSpec& gen,
                          std::span<const TimePath> tests, int n, const DembartTolerances& tol = {});

}  // namespace sgpert
