#pragma once

// Inner loops shared by every module. Scalar helpers work on one frame; the
// batch kernels work on a frame-major block of samples (frames x points) and
// come in two flavours with identical signatures:
//
//   serial::   straightforward reference loops, kept for testing
//   parallel:: fused loops parallelized over frames with OpenMP
//
// Parallel kernels split work over independent outputs only (frames, time
// pairs), never over the terms of a single sum, so both flavours produce the
// same floating-point results and runs are reproducible for any thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace sgpert::kernels {

// Trapezoid integral of |v|^p over indices [first, v.size() - 1].
double power_integral(std::span<const double> v, std::size_t first, double p, double h);

// s^{1/p}.
double root(double s, double p);

inline double window_seminorm(std::span<const double> v, std::size_t first, double p, double h) {
    return root(power_integral(v, first, p, h), p);
}

// Trapezoid integral of v * w over indices [first, v.size() - 1].
double dot_integral(std::span<const double> v, std::span<const double> w, std::size_t first, double h);

// Left shift by k nodes: dst = src for k = 0, otherwise dst[i] = src[i + k]
// for i + k < m and 0 from the jump node on (m = src.size() - 1).
void shift(std::span<const double> src, std::size_t k, std::span<double> dst);

// Piecewise-linear refinement of per-frame values onto the spatial step:
// out[r] for r = 0 .. (values.size() - 1) * stride.
std::vector<double> refine_linear(std::span<const double> values, std::size_t stride);

namespace serial {

// out[j] = window seminorm of frame j.
void window_seminorms(std::span<const double> frames, std::size_t points, std::size_t first, double p,
                      double h, std::span<double> out);

// out[j] = trapezoid integral of frame j against `weight` over [first, end].
void functional_values(std::span<const double> frames, std::size_t points, std::span<const double> weight,
                       std::size_t first, double h, std::span<double> out);

// Transport with boundary inflow. With m = points - 1 and o = j * stride:
//
//   out_0[i] = initial[i]                               (initial may be empty)
//   out_j[i] = initial[i + o]    if i + o < m, for o > 0
//            = inflow[i + o - m] if i + o >= m
//
// `inflow` is indexed by elapsed spatial steps since entering at b.
void assemble_transport(std::span<const double> initial, std::span<const double> inflow, std::size_t stride,
                        std::size_t points, std::span<double> out);

// Trapezoid-in-time superposition of shifted frames:
//   out_i = sum_{j <= i} w_ij * shift(frame_j, (i - j) * stride),
// w_ij = dt/2 for j in {0, i}, dt otherwise; out_0 = 0.
void superpose_shifts(std::span<const double> frames, std::size_t points, std::size_t stride, double dt,
                      std::span<double> out);

// Worst relative residual p_w(T(a+b)x - T(a)T(b)x) / p_w(x) over all pairs
// (a, b) of `steps` with a + b <= max_total, one entry per window start in
// `firsts`. A window where p_w(x) = 0 reports the absolute residual.
void shift_law_residuals(std::span<const double> x, std::span<const std::size_t> steps, std::size_t max_total,
                         std::span<const std::size_t> firsts, double p, double h, std::span<double> worst);

}  // namespace serial

namespace parallel {

void window_seminorms(std::span<const double> frames, std::size_t points, std::size_t first, double p,
                      double h, std::span<double> out);
void functional_values(std::span<const double> frames, std::size_t points, std::span<const double> weight,
                       std::size_t first, double h, std::span<double> out);
void assemble_transport(std::span<const double> initial, std::span<const double> inflow, std::size_t stride,
                        std::size_t points, std::span<double> out);
void superpose_shifts(std::span<const double> frames, std::size_t points, std::size_t stride, double dt,
                      std::span<double> out);
void shift_law_residuals(std::span<const double> x, std::span<const std::size_t> steps, std::size_t max_total,
                         std::span<const std::size_t> firsts, double p, double h, std::span<double> worst);

}  // namespace parallel

// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int thread_count();

}  // namespace sgpert::kernels
