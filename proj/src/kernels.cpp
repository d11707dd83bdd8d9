#include "sgpert/kernels.hpp"

#include <algorithm>
#include <cmath>

#ifdef SGPERT_HAVE_OPENMP
#include <omp.h>
#endif

namespace sgpert::kernels {

double power_integral(std::span<const double> v, std::size_t first, double p, double h) {
    if (v.empty() || first + 1 >= v.size()) return 0.0;
    const std::size_t last = v.size() - 1;
    double sum = 0.0;
    if (p == 2.0) {
        for (std::size_t i = first + 1; i < last; ++i) sum += v[i] * v[i];
        sum += 0.5 * (v[first] * v[first] + v[last] * v[last]);
    } else {
        for (std::size_t i = first + 1; i < last; ++i) sum += std::pow(std::abs(v[i]), p);
        sum += 0.5 * (std::pow(std::abs(v[first]), p) + std::pow(std::abs(v[last]), p));
    }
    return sum * h;
}

double root(double s, double p) { return p == 2.0 ? std::sqrt(s) : std::pow(s, 1.0 / p); }

double dot_integral(std::span<const double> v, std::span<const double> w, std::size_t first, double h) {
    if (v.empty() || first + 1 >= v.size()) return 0.0;
    const std::size_t last = v.size() - 1;
    double sum = 0.0;
    for (std::size_t i = first + 1; i < last; ++i) sum += v[i] * w[i];
    sum += 0.5 * (v[first] * w[first] + v[last] * w[last]);
    return sum * h;
}

void shift(std::span<const double> src, std::size_t k, std::span<double> dst) {
    const std::size_t n = src.size();
    if (k == 0) {
        std::copy(src.begin(), src.end(), dst.begin());
        return;
    }
    // Nodes with i + k < m keep a value; the node at the jump reads as 0.
    const std::size_t kept = k + 1 < n ? n - 1 - k : 0;
    std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(k), kept, dst.begin());
    std::fill(dst.begin() + static_cast<std::ptrdiff_t>(kept), dst.begin() + static_cast<std::ptrdiff_t>(n), 0.0);
}

std::vector<double> refine_linear(std::span<const double> values, std::size_t stride) {
    if (values.empty()) return {};
    std::vector<double> out((values.size() - 1) * stride + 1);
    for (std::size_t j = 0; j + 1 < values.size(); ++j) {
        for (std::size_t r = 0; r < stride; ++r) {
            const double w = static_cast<double>(r) / static_cast<double>(stride);
            out[j * stride + r] = r == 0 ? values[j] : (1.0 - w) * values[j] + w * values[j + 1];
        }
    }
    out.back() = values.back();
    return out;
}

int thread_count() {
#ifdef SGPERT_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// ---------------------------------------------------------------------------
// Reference implementations.

namespace serial {

void window_seminorms(std::span<const double> frames, std::size_t points, std::size_t first, double p,
                      double h, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = window_seminorm(frames.subspan(j * points, points), first, p, h);
}

void functional_values(std::span<const double> frames, std::size_t points, std::span<const double> weight,
                       std::size_t first, double h, std::span<double> out) {
    for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = dot_integral(frames.subspan(j * points, points), weight, first, h);
}

void assemble_transport(std::span<const double> initial, std::span<const double> inflow, std::size_t stride,
                        std::size_t points, std::span<double> out) {
    const std::size_t m = points - 1;
    const std::size_t frames = out.size() / points;
    for (std::size_t j = 0; j < frames; ++j) {
        const std::size_t offset = j * stride;
        for (std::size_t i = 0; i < points; ++i) {
            const std::size_t src = i + offset;
            double v = 0.0;
            if (offset == 0) {
                if (!initial.empty()) v = initial[i];
            } else if (src < m) {
                if (!initial.empty()) v = initial[src];
            } else {
                v = inflow[src - m];
            }
            out[j * points + i] = v;
        }
    }
}

void superpose_shifts(std::span<const double> frames, std::size_t points, std::size_t stride, double dt,
                      std::span<double> out) {
    const std::size_t count = out.size() / points;
    std::vector<double> shifted(points);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 1; i < count; ++i) {
        auto target = out.subspan(i * points, points);
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = (j == 0 || j == i) ? 0.5 * dt : dt;
            shift(frames.subspan(j * points, points), (i - j) * stride, shifted);
            for (std::size_t s = 0; s < points; ++s) target[s] += w * shifted[s];
        }
    }
}

void shift_law_residuals(std::span<const double> x, std::span<const std::size_t> steps, std::size_t max_total,
                         std::span<const std::size_t> firsts, double p, double h, std::span<double> worst) {
    const std::size_t n = x.size();
    std::vector<double> norms(firsts.size());
    for (std::size_t w = 0; w < firsts.size(); ++w) norms[w] = window_seminorm(x, firsts[w], p, h);
    std::vector<double> inner(n), composed(n), direct(n), diff(n);
    std::fill(worst.begin(), worst.end(), 0.0);
    for (std::size_t a : steps) {
        for (std::size_t b : steps) {
            if (a + b > max_total) continue;
            shift(x, b, inner);
            shift(inner, a, composed);
            shift(x, a + b, direct);
            for (std::size_t i = 0; i < n; ++i) diff[i] = direct[i] - composed[i];
            for (std::size_t w = 0; w < firsts.size(); ++w) {
                const double r = window_seminorm(diff, firsts[w], p, h);
                worst[w] = std::max(worst[w], norms[w] > 0.0 ? r / norms[w] : r);
            }
        }
    }
}

}  // namespace serial

// ---------------------------------------------------------------------------
// OpenMP implementations. Same results as serial:: up to summation order,
// which is kept identical per output element.

namespace parallel {

void window_seminorms(std::span<const double> frames, std::size_t points, std::size_t first, double p,
                      double h, std::span<double> out) {
    const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        out[uj] = window_seminorm(frames.subspan(uj * points, points), first, p, h);
    }
}

void functional_values(std::span<const double> frames, std::size_t points, std::span<const double> weight,
                       std::size_t first, double h, std::span<double> out) {
    const auto count = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t j = 0; j < count; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        out[uj] = dot_integral(frames.subspan(uj * points, points), weight, first, h);
    }
}

void assemble_transport(std::span<const double> initial, std::span<const double> inflow, std::size_t stride,
                        std::size_t points, std::span<double> out) {
    const std::size_t m = points - 1;
    const auto frames = static_cast<std::ptrdiff_t>(out.size() / points);
    const bool has_initial = !initial.empty();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t jj = 0; jj < frames; ++jj) {
        const auto j = static_cast<std::size_t>(jj);
        const std::size_t offset = j * stride;
        double* row = out.data() + j * points;
        if (offset == 0) {
            for (std::size_t i = 0; i < points; ++i) row[i] = has_initial ? initial[i] : 0.0;
            continue;
        }
        // Points fed by the initial datum: i + offset < m.
        const std::size_t carried = offset < m ? m - offset : 0;
        if (has_initial) {
            const double* src = initial.data() + offset;
            for (std::size_t i = 0; i < carried; ++i) row[i] = src[i];
        } else {
            for (std::size_t i = 0; i < carried; ++i) row[i] = 0.0;
        }
        // Points fed through the boundary: i + offset >= m.
        const double* in = inflow.data() + (offset + carried - m);
        for (std::size_t i = carried; i < points; ++i) row[i] = in[i - carried];
    }
}

void superpose_shifts(std::span<const double> frames, std::size_t points, std::size_t stride, double dt,
                      std::span<double> out) {
    const auto count = static_cast<std::ptrdiff_t>(out.size() / points);
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(points), 0.0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t ii = 1; ii < count; ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* target = out.data() + i * points;
        std::fill(target, target + points, 0.0);
        for (std::size_t j = 0; j <= i; ++j) {
            const double w = (j == 0 || j == i) ? 0.5 * dt : dt;
            const std::size_t k = (i - j) * stride;
            // k > 0 keeps nodes with index + k < m, see shift().
            const std::size_t kept = k == 0 ? points : (k + 1 < points ? points - 1 - k : 0);
            if (kept == 0) continue;
            const double* src = frames.data() + j * points + k;
            for (std::size_t s = 0; s < kept; ++s) target[s] += w * src[s];
        }
    }
}

void shift_law_residuals(std::span<const double> x, std::span<const std::size_t> steps, std::size_t max_total,
                         std::span<const std::size_t> firsts, double p, double h, std::span<double> worst) {
    const std::size_t n = x.size();
    const std::size_t m = n - 1;
    const std::size_t windows = firsts.size();
    std::vector<double> norms(windows);
    for (std::size_t w = 0; w < windows; ++w) norms[w] = window_seminorm(x, firsts[w], p, h);
    std::fill(worst.begin(), worst.end(), 0.0);
    double* result = worst.data();
    const auto outer = static_cast<std::ptrdiff_t>(steps.size());
#pragma omp parallel
    {
        std::vector<double> composed(n), diff(n);
        std::vector<double> local(windows, 0.0);
#pragma omp for schedule(dynamic, 4)
        for (std::ptrdiff_t ai = 0; ai < outer; ++ai) {
            const std::size_t a = steps[static_cast<std::size_t>(ai)];
            for (std::size_t b : steps) {
                if (a + b > max_total) continue;
                // T(a)T(b)x and T(a+b)x evaluated by independent index maps.
                const auto inner = [&](std::size_t j) { return b == 0 ? x[j] : (j + b < m ? x[j + b] : 0.0); };
                for (std::size_t i = 0; i < n; ++i) composed[i] = a == 0 ? inner(i) : (i + a < m ? inner(i + a) : 0.0);
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t k = a + b;
                    const double direct = k == 0 ? x[i] : (i + k < m ? x[i + k] : 0.0);
                    diff[i] = direct - composed[i];
                }
                for (std::size_t w = 0; w < windows; ++w) {
                    const double r = window_seminorm(diff, firsts[w], p, h);
                    local[w] = std::max(local[w], norms[w] > 0.0 ? r / norms[w] : r);
                }
            }
        }
#pragma omp critical
        for (std::size_t w = 0; w < windows; ++w) result[w] = std::max(result[w], local[w]);
    }
}

}  // namespace parallel

}  // namespace sgpert::kernels
