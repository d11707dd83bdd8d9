#pragma once

// Discretized L^p_loc(-inf, b]: a uniform grid truncated to [-L, b], sampled
// functions on it, time paths of such functions, and the graded seminorms
//
//     p_n(x) = ( int_{-n}^{b} |x(s)|^p ds )^{1/p}
//
// together with their sup- and L^1-in-time lifts. All integrals use the
// composite trapezoid rule on |x|^p followed by the p-th root.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sgpert/error.hpp"

namespace sgpert {

class Grid {
public:
    // Throws Error unless b > 0, left_extent > 0, step > 0 and (b + L) / step
    // is an integer.
    Grid(double b, double left_extent, double step);

    double b() const noexcept { return b_; }
    double left_extent() const noexcept { return left_; }
    double step() const noexcept { return step_; }

    std::size_t cells() const noexcept { return cells_; }
    std::size_t size() const noexcept { return cells_ + 1; }

    double point(std::size_t i) const noexcept;

    // Number of grid steps in `length`; AlignmentError if not an integer
    // multiple of the step, Error if negative.
    std::size_t steps(double length) const;

    // Index of the aligned point s in [-L, b].
    std::size_t index_of(double s) const;

    // Index of -n, the left end of the window of p_n.
    std::size_t window_start(int n) const;

    bool operator==(const Grid&) const = default;

private:
    double b_;
    double left_;
    double step_;
    std::size_t cells_;
};

// Returns the integer k with value ~= k * unit, or throws AlignmentError.
std::size_t aligned_multiple(double value, double unit, const char* what);

class GridFunction {
public:
    GridFunction(Grid grid, double p, std::vector<double> values);

    static GridFunction zero(const Grid& grid, double p);

    template <class F>
    static GridFunction sample(const Grid& grid, double p, F&& f) {
        std::vector<double> v(grid.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.point(i));
        return GridFunction(grid, p, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    double exponent() const noexcept { return p_; }
    std::span<const double> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double boundary_value() const { return values_.back(); }
    bool is_zero() const;

    bool conforms(const GridFunction& other) const;
    void require_conforming(const GridFunction& other) const;

    GridFunction operator+(const GridFunction& rhs) const;
    GridFunction operator-(const GridFunction& rhs) const;
    GridFunction operator*(double scale) const;
    friend GridFunction operator*(double scale, const GridFunction& x) { return x * scale; }

private:
    Grid grid_;
    double p_;
    std::vector<double> values_;
};

// Samples of a path t -> f(t) in X at t = 0, h_t, ..., t0. Frames are stored
// contiguously (frame-major). h_t must be a positive integer multiple of the
// spatial step so that shifts by elapsed time are exact index shifts.
class TimePath {
public:
    TimePath(Grid grid, double p, double horizon, double time_step, std::vector<double> data);
    TimePath(double horizon, double time_step, const std::vector<GridFunction>& frames);

    static TimePath zero(const Grid& grid, double p, double horizon, double time_step);

    template <class F>
    static TimePath sample(const Grid& grid, double p, double horizon, double time_step, F&& f) {
        TimePath path = zero(grid, p, horizon, time_step);
        for (std::size_t j = 0; j < path.frame_count(); ++j) {
            const double t = path.time(j);
            for (std::size_t i = 0; i < grid.size(); ++i)
                path.data_[j * grid.size() + i] = f(t, grid.point(i));
        }
        return path;
    }

    const Grid& grid() const noexcept { return grid_; }
    double exponent() const noexcept { return p_; }
    double horizon() const noexcept { return horizon_; }
    double time_step() const noexcept { return time_step_; }
    std::size_t frame_count() const noexcept { return frames_; }
    std::size_t last_index() const noexcept { return frames_ - 1; }
    // Spatial steps per time step.
    std::size_t stride() const noexcept { return stride_; }
    double time(std::size_t j) const noexcept { return static_cast<double>(j) * time_step_; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> frame_values(std::size_t j) const;
    GridFunction frame(std::size_t j) const;

    // True if frame 0 vanishes up to tol * max(1, max |f|).
    bool starts_at_zero(double tol = 0.0) const;
    // DomainError unless the path belongs to the space of paths with f(0) = 0.
    void require_vanishing_start(const char* what) const;

    bool conforms(const TimePath& other) const;
    void require_conforming(const TimePath& other) const;

    TimePath operator+(const TimePath& rhs) const;
    TimePath operator-(const TimePath& rhs) const;
    TimePath operator*(double scale) const;

private:
    Grid grid_;
    double p_;
    double horizon_;
    double time_step_;
    std::size_t stride_;
    std::size_t frames_;
    std::vector<double> data_;
};

// Relative tolerance under which frame 0 counts as zero.
inline constexpr double kZeroFrameTolerance = 1e-12;

double seminorm(const GridFunction& x, int n);
double sup_seminorm(const TimePath& f, int n);
double l1_seminorm(const TimePath& f, int n);
// p_n of every frame, in frame order.
std::vector<double> frame_seminorms(const TimePath& f, int n);

// The graded family p_1 <= p_2 <= ... <= p_{n_max} on a fixed grid.
class SeminormFamily {
public:
    SeminormFamily(Grid grid, double p, int max_index);

    const Grid& grid() const noexcept { return grid_; }
    double exponent() const noexcept { return p_; }
    int max_index() const noexcept { return max_index_; }

    double operator()(const GridFunction& x, int n) const;
    double sup(const TimePath& f, int n) const;
    double l1(const TimePath& f, int n) const;
    // p_1(x), ..., p_{n_max}(x).
    std::vector<double> all(const GridFunction& x) const;

private:
    void require(const Grid& grid, double p, int n) const;

    Grid grid_;
    double p_;
    int max_index_;
};

struct Membership {
    bool member = false;
    // Boundary-condition defect: |x(b)| for D(A), |x(b) - Phi(x)| for D(C).
    double residual = 0.0;
    double max_difference_quotient = 0.0;
};

// Bound on |x_{i+1} - x_i| / h used as the discrete W^{1,p} surrogate.
// Sobolev membership cannot be decided from samples; this only rejects data
// whose difference quotients blow up on the current grid.
inline constexpr double kDefaultSlopeBound = 1e4;

double max_difference_quotient(const GridFunction& x);

// x(b) = 0 within tol and bounded difference quotients.
Membership in_domain_A(const GridFunction& x, double tol, double slope_bound = kDefaultSlopeBound);

}  // namespace sgpert
