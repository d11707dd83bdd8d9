#include "sgpert/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sgpert/kernels.hpp"

namespace sgpert {

namespace {

constexpr double kAlignTol = 1e-9;

std::string describe(const char* what, double value, double unit) {
    std::ostringstream os;
    os.precision(17);
    os << what << " = " << value << " is not an integer multiple of " << unit;
    return os.str();
}

}  // namespace

std::size_t aligned_multiple(double value, double unit, const char* what) {
    if (!(unit > 0.0)) throw Error(std::string(what) + ": unit must be positive");
    if (!std::isfinite(value)) throw Error(std::string(what) + " must be finite");
    if (value < 0.0) throw Error(std::string(what) + " must be non-negative");
    const double ratio = value / unit;
    const double k = std::round(ratio);
    if (std::abs(ratio - k) > kAlignTol * std::max(1.0, ratio))
        throw AlignmentError(describe(what, value, unit));
    return static_cast<std::size_t>(k);
}

Grid::Grid(double b, double left_extent, double step) : b_(b), left_(left_extent), step_(step), cells_(0) {
    if (!(b > 0.0) || !std::isfinite(b)) throw Error("grid: b must be positive");
    if (!(left_extent > 0.0) || !std::isfinite(left_extent)) throw Error("grid: L must be positive");
    if (!(step > 0.0) || !std::isfinite(step)) throw Error("grid: h_s must be positive");
    cells_ = aligned_multiple(b + left_extent, step, "b + L");
    if (cells_ == 0) throw Error("grid: h_s larger than the domain");
}

double Grid::point(std::size_t i) const noexcept {
    if (i == cells_) return b_;
    return -left_ + static_cast<double>(i) * step_;
}

std::size_t Grid::steps(double length) const { return aligned_multiple(length, step_, "length"); }

std::size_t Grid::index_of(double s) const {
    if (s > b_ + kAlignTol * step_ || s < -left_ - kAlignTol * step_)
        throw IndexOutOfRange("point outside the grid");
    return aligned_multiple(std::max(0.0, s + left_), step_, "grid point offset");
}

std::size_t Grid::window_start(int n) const {
    if (n < 1) throw IndexOutOfRange("seminorm index must be >= 1");
    if (static_cast<double>(n) > left_ + kAlignTol * step_)
        throw IndexOutOfRange("seminorm window [-" + std::to_string(n) + ", b] leaves the grid");
    return aligned_multiple(left_ - static_cast<double>(n), step_, "window start -n + L");
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(Grid grid, double p, std::vector<double> values)
    : grid_(std::move(grid)), p_(p), values_(std::move(values)) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("exponent p must satisfy 1 < p < inf");
    if (values_.size() != grid_.size()) throw GridMismatch("grid function: value count != grid size");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function: non-finite sample");
}

GridFunction GridFunction::zero(const Grid& grid, double p) {
    return GridFunction(grid, p, std::vector<double>(grid.size(), 0.0));
}

bool GridFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool GridFunction::conforms(const GridFunction& other) const { return grid_ == other.grid_ && p_ == other.p_; }

void GridFunction::require_conforming(const GridFunction& other) const {
    if (!conforms(other)) throw GridMismatch("grid functions live on different grids or exponents");
}

GridFunction GridFunction::operator+(const GridFunction& rhs) const {
    require_conforming(rhs);
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.values_[i];
    return GridFunction(grid_, p_, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& rhs) const {
    require_conforming(rhs);
    std::vector<double> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rhs.values_[i];
    return GridFunction(grid_, p_, std::move(v));
}

GridFunction GridFunction::operator*(double scale) const {
    std::vector<double> v(values_);
    for (double& e : v) e *= scale;
    return GridFunction(grid_, p_, std::move(v));
}

// ---------------------------------------------------------------------------

TimePath::TimePath(Grid grid, double p, double horizon, double time_step, std::vector<double> data)
    : grid_(std::move(grid)), p_(p), horizon_(horizon), time_step_(time_step), stride_(0), frames_(0),
      data_(std::move(data)) {
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("exponent p must satisfy 1 < p < inf");
    stride_ = aligned_multiple(time_step, grid_.step(), "h_t");
    if (stride_ == 0) throw AlignmentError("h_t must be a positive multiple of h_s");
    frames_ = aligned_multiple(horizon, time_step, "horizon") + 1;
    if (data_.size() != frames_ * grid_.size()) throw GridMismatch("time path: sample count != frames x points");
    for (double v : data_)
        if (!std::isfinite(v)) throw DomainError("time path: non-finite sample");
}

namespace {

const GridFunction& first_frame(const std::vector<GridFunction>& frames) {
    if (frames.empty()) throw Error("time path needs at least one frame");
    return frames.front();
}

std::vector<double> flatten(const std::vector<GridFunction>& frames) {
    const GridFunction& first = first_frame(frames);
    std::vector<double> flat;
    flat.reserve(frames.size() * first.size());
    for (const auto& f : frames) {
        first.require_conforming(f);
        flat.insert(flat.end(), f.values().begin(), f.values().end());
    }
    return flat;
}

}  // namespace

TimePath::TimePath(double horizon, double time_step, const std::vector<GridFunction>& frames)
    : TimePath(first_frame(frames).grid(), first_frame(frames).exponent(), horizon, time_step, flatten(frames)) {}

TimePath TimePath::zero(const Grid& grid, double p, double horizon, double time_step) {
    const std::size_t frames = aligned_multiple(horizon, time_step, "horizon") + 1;
    return TimePath(grid, p, horizon, time_step, std::vector<double>(frames * grid.size(), 0.0));
}

std::span<const double> TimePath::frame_values(std::size_t j) const {
    if (j >= frames_) throw IndexOutOfRange("frame index out of range");
    return std::span<const double>(data_).subspan(j * grid_.size(), grid_.size());
}

GridFunction TimePath::frame(std::size_t j) const {
    auto v = frame_values(j);
    return GridFunction(grid_, p_, std::vector<double>(v.begin(), v.end()));
}

bool TimePath::starts_at_zero(double tol) const {
    double scale = 1.0;
    for (double v : data_) scale = std::max(scale, std::abs(v));
    const double limit = tol * scale;
    for (double v : frame_values(0))
        if (std::abs(v) > limit) return false;
    return true;
}

void TimePath::require_vanishing_start(const char* what) const {
    if (!starts_at_zero(kZeroFrameTolerance))
        throw DomainError(std::string(what) + ": path must vanish at t = 0");
}

bool TimePath::conforms(const TimePath& other) const {
    return grid_ == other.grid_ && p_ == other.p_ && frames_ == other.frames_ && stride_ == other.stride_;
}

void TimePath::require_conforming(const TimePath& other) const {
    if (!conforms(other)) throw GridMismatch("time paths differ in grid, exponent or time sampling");
}

TimePath TimePath::operator+(const TimePath& rhs) const {
    require_conforming(rhs);
    std::vector<double> v(data_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += rhs.data_[i];
    return TimePath(grid_, p_, horizon_, time_step_, std::move(v));
}

TimePath TimePath::operator-(const TimePath& rhs) const {
    require_conforming(rhs);
    std::vector<double> v(data_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= rhs.data_[i];
    return TimePath(grid_, p_, horizon_, time_step_, std::move(v));
}

TimePath TimePath::operator*(double scale) const {
    std::vector<double> v(data_);
    for (double& e : v) e *= scale;
    return TimePath(grid_, p_, horizon_, time_step_, std::move(v));
}

// ---------------------------------------------------------------------------

double seminorm(const GridFunction& x, int n) {
    const Grid& g = x.grid();
    return kernels::window_seminorm(x.values(), g.window_start(n), x.exponent(), g.step());
}

std::vector<double> frame_seminorms(const TimePath& f, int n) {
    const Grid& g = f.grid();
    std::vector<double> out(f.frame_count());
    kernels::parallel::window_seminorms(f.data(), g.size(), g.window_start(n), f.exponent(), g.step(), out);
    return out;
}

double sup_seminorm(const TimePath& f, int n) {
    const auto norms = frame_seminorms(f, n);
    return *std::max_element(norms.begin(), norms.end());
}

double l1_seminorm(const TimePath& f, int n) {
    const auto norms = frame_seminorms(f, n);
    if (norms.size() < 2) return 0.0;
    double sum = 0.5 * (norms.front() + norms.back());
    for (std::size_t j = 1; j + 1 < norms.size(); ++j) sum += norms[j];
    return sum * f.time_step();
}

SeminormFamily::SeminormFamily(Grid grid, double p, int max_index) : grid_(std::move(grid)), p_(p), max_index_(max_index) {
    if (max_index < 1) throw IndexOutOfRange("seminorm family needs n_max >= 1");
    if (!(p > 1.0) || !std::isfinite(p)) throw Error("exponent p must satisfy 1 < p < inf");
    grid_.window_start(max_index);
}

void SeminormFamily::require(const Grid& grid, double p, int n) const {
    if (n < 1 || n > max_index_) throw IndexOutOfRange("seminorm index outside [1, n_max]");
    if (!(grid == grid_) || p != p_) throw GridMismatch("argument does not match the seminorm family");
}

double SeminormFamily::operator()(const GridFunction& x, int n) const {
    require(x.grid(), x.exponent(), n);
    return seminorm(x, n);
}

double SeminormFamily::sup(const TimePath& f, int n) const {
    require(f.grid(), f.exponent(), n);
    return sup_seminorm(f, n);
}

double SeminormFamily::l1(const TimePath& f, int n) const {
    require(f.grid(), f.exponent(), n);
    return l1_seminorm(f, n);
}

std::vector<double> SeminormFamily::all(const GridFunction& x) const {
    require(x.grid(), x.exponent(), 1);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(max_index_));
    for (int n = 1; n <= max_index_; ++n) out.push_back(seminorm(x, n));
    return out;
}

// ---------------------------------------------------------------------------

double max_difference_quotient(const GridFunction& x) {
    const auto v = x.values();
    const double h = x.grid().step();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) worst = std::max(worst, std::abs(v[i + 1] - v[i]) / h);
    return worst;
}

Membership in_domain_A(const GridFunction& x, double tol, double slope_bound) {
    Membership m;
    m.residual = std::abs(x.boundary_value());
    m.max_difference_quotient = max_difference_quotient(x);
    m.member = m.residual <= tol && m.max_difference_quotient <= slope_bound;
    return m;
}

}  // namespace sgpert
