// Acceptance battery on the default grid (b = 1, L = 4, h_s = 1/256, p = 2).
// One PASS/FAIL line per criterion; exit status 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sgpert/commands.hpp"
#include "sgpert/convergence.hpp"
#include "sgpert/evolve.hpp"
#include "sgpert/perturbation.hpp"
#include "sgpert/sampling.hpp"
#include "sgpert/semigroup.hpp"

using namespace sgpert;

namespace {

constexpr double kB = 1.0;
constexpr double kL = 4.0;
constexpr double kP = 2.0;
constexpr double kHs = 1.0 / 256.0;
const std::vector<int> kIndices{1, 2, 3};

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string fmt_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + fmt(v[k]);
    return s + "]";
}

bool all_at_least(const std::vector<double>& v, double floor) {
    return !v.empty() && std::all_of(v.begin(), v.end(), [&](double x) { return x >= floor; });
}

std::vector<GridFunction> random_battery(const Grid& g, int count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<GridFunction> xs;
    for (int k = 0; k < count; ++k) xs.push_back(random_piecewise_linear(g, kP, rng));
    return xs;
}

Outcome semigroup_axioms() {
    const Grid g(kB, kL, kHs);
    const ShiftSemigroup T(g);
    std::vector<double> times;
    for (std::size_t k = 0; k <= g.steps(2.0); ++k) times.push_back(static_cast<double>(k) * kHs);
    const auto xs = random_battery(g, 20, 1);
    const auto report = check_semigroup_axioms(T, times, xs, kIndices);
    double worst = 0.0;
    for (const auto& row : report.rows()) worst = std::max(worst, row.residual);
    return {report.passed(), "max relative residual " + fmt(worst) + " (bound 1e-12, " +
                                 std::to_string(times.size()) + " times)"};
}

Outcome equicontinuity() {
    const Grid g(kB, kL, kHs);
    const ShiftSemigroup T(g);
    const auto xs = random_battery(g, 20, 1);
    double M = 0.0;
    for (int n : kIndices) M = std::max(M, equicontinuity_constants(T, 2.0, n, xs).M);
    return {M <= 1.0 + 1e-12, "M = " + fmt(M - 1.0) + " + 1 (bound 1 + 1e-12)"};
}

Outcome perturbation_bound() {
    const Grid g(kB, kL, kHs);
    const auto phi = BoundaryFunctional::uniform(g, kP);
    const double t0 = 0.25;
    Rng rng(3);
    double worst = 0.0;
    bool pass = true;
    for (int k = 0; k < 50; ++k) {
        const auto f = random_path(g, kP, t0, kHs, rng, false);
        const double rhs = effective_contraction(phi, t0) * sup_seminorm(f, 1);
        for (int n : kIndices) {
            const double lhs = seminorm(perturb_integral_h(f, t0, phi), n);
            worst = std::max(worst, lhs / rhs);
            pass = pass && lhs <= rhs * (1.0 + 1e-3);
        }
    }
    return {pass, "max p_n(h) / (t0^{1/p} K p_1^inf(f)) = " + fmt(worst) + " (bound 1.001)"};
}

Outcome neumann_decay() {
    const Grid g(kB, kL, kHs);
    const auto phi = BoundaryFunctional::uniform(g, kP);
    const double t0 = 0.125;
    const auto f = smooth_forcing(g, kP, t0, kHs);
    NeumannConfig cfg;
    cfg.tol = 1e-300;
    cfg.max_terms = 9;
    const auto short_sum = neumann_resolvent(f, phi, cfg);
    cfg.max_terms = 19;
    const auto long_sum = neumann_resolvent(f, phi, cfg);

    bool pass = std::abs(short_sum.k_eff - 0.5) < 1e-12 && short_sum.last_term == 8 && long_sum.last_term == 18;
    double worst_ratio = 0.0, worst_tail = 0.0;
    for (std::size_t w = 0; w < short_sum.tracked.size(); ++w) {
        const int n = short_sum.tracked[w];
        std::vector<double> inc;
        for (const auto& d : short_sum.diagnostics)
            if (d.n == n) inc.push_back(d.increment);
        for (std::size_t k = 1; k < inc.size() && k <= 8; ++k) {
            const double ratio = inc[k] / inc[k - 1];
            worst_ratio = std::max(worst_ratio, ratio);
            pass = pass && ratio <= short_sum.k_eff + 0.02;
        }
        const double tail = sup_seminorm(long_sum.sum - short_sum.sum, n);
        worst_tail = std::max(worst_tail, tail / short_sum.error_bound[w]);
        pass = pass && tail <= short_sum.error_bound[w];
    }
    return {pass, "max ratio " + fmt(worst_ratio) + " (bound 0.52), truncation / tail bound " + fmt(worst_tail)};
}

Outcome dembart_i() {
    const std::vector<std::pair<double, double>> ladder{
        {1.0 / 16.0, 1.0 / 256.0}, {1.0 / 32.0, 1.0 / 1024.0}, {1.0 / 64.0, 1.0 / 4096.0}};
    std::vector<double> steps;
    std::vector<std::vector<double>> errors(kIndices.size());
    std::vector<double> constants;
    for (const auto& [h_t, h_s] : ladder) {
        const Grid g(kB, kL, h_s);
        const auto tests = smooth_test_paths(g, kP, 0.5, h_t);
        steps.push_back(h_t);
        double c = 0.0;
        for (std::size_t w = 0; w < kIndices.size(); ++w) {
            const auto report = dembart_check(resolvent_path, GeneratorSpec::unperturbed(), tests, kIndices[w]);
            errors[w].push_back(report.max_residual("dembart_i"));
            c = std::max(c, errors[w].back() / (h_t * h_t + h_s));
        }
        constants.push_back(c);
    }
    bool pass = true;
    std::vector<double> orders;
    for (const auto& e : errors) {
        const auto o = observed_orders(steps, e);
        pass = pass && all_at_least(o, 1.8);
        orders.insert(orders.end(), o.begin(), o.end());
    }
    return {pass, "orders " + fmt_list(orders) + " (need >= 1.8), C = " + fmt_list(constants)};
}

double picard_vs_oracle(const Grid& g, const BoundaryFunctional& phi, double h_t) {
    const auto x0 = smooth_datum(g, kP);
    const auto p = picard_semigroup(x0, phi, 1.0, h_t).path;
    const auto u = characteristics_oracle(x0, phi, 1.0, h_t).u;
    return sup_seminorm(p - u, 2);
}

Outcome oracle_equivalence() {
    std::vector<double> steps, errors;
    for (int level = 0; level < 3; ++level) {
        const double h_s = kHs / (1 << level);
        const Grid g(kB, kL, h_s);
        steps.push_back(h_s);
        errors.push_back(picard_vs_oracle(g, BoundaryFunctional::bump(g, kP), 2.0 * h_s));
    }
    std::vector<double> factors;
    for (std::size_t k = 0; k + 1 < errors.size(); ++k) factors.push_back(errors[k] / errors[k + 1]);
    const Grid g(kB, kL, kHs);
    const double zero = picard_vs_oracle(g, BoundaryFunctional::zero(g, kP), kHs);
    return {all_at_least(factors, 1.8) && zero <= 1e-12,
            "discrepancies " + fmt_list(errors) + ", factors " + fmt_list(factors) + " (need >= 1.8), zero kernel " +
                fmt(zero)};
}

Outcome resolvent_crosscheck_refinement() {
    std::vector<double> steps;
    std::vector<std::vector<double>> diffs(kIndices.size());
    bool pass = true;
    NeumannConfig cfg;
    for (int level = 0; level < 3; ++level) {
        const double h_s = kHs / (1 << level);
        const Grid g(kB, kL, h_s);
        const auto f = smooth_forcing(g, kP, 0.125, h_s);
        // Discretization term: first order in h_s with unit constant.
        const auto cc = resolvent_crosscheck(f, BoundaryFunctional::uniform(g, kP), cfg, h_s);
        pass = pass && cc.report.passed();
        steps.push_back(h_s);
        for (std::size_t w = 0; w < kIndices.size(); ++w) diffs[w].push_back(cc.difference[w]);
    }
    std::vector<double> orders;
    for (const auto& d : diffs) {
        const auto o = observed_orders(steps, d);
        pass = pass && all_at_least(o, 0.9);
        orders.insert(orders.end(), o.begin(), o.end());
    }
    return {pass, "p_2 differences " + fmt_list(diffs[1]) + ", orders " + fmt_list(orders) + " (need >= 0.9)"};
}

Outcome generator_consistency() {
    const std::vector<std::function<double(double)>> bases{
        [](double s) { return std::exp(-2.0 * (s - 0.25) * (s - 0.25)); },
        [](double s) { return std::cos(3.0 * s) * std::exp(0.5 * s); },
        [](double s) { return (1.0 - s) * (1.0 - s) + 0.3 * std::sin(5.0 * s); },
    };
    std::vector<double> steps;
    std::vector<std::vector<double>> errors(bases.size());
    bool pass = true;
    double worst_bc = 0.0;
    for (int level = 0; level < 3; ++level) {
        const double h_s = kHs / (1 << level);
        const Grid g(kB, kL, h_s);
        const auto phi = BoundaryFunctional::bump(g, kP);
        const auto S = perturbed_evolution(phi, h_s);
        const double h = 8.0 * h_s;
        steps.push_back(h);
        for (std::size_t k = 0; k < bases.size(); ++k) {
            const auto x = compatible_datum(GridFunction::sample(g, kP, bases[k]), phi);
            const double bc = std::abs(x.boundary_value() - phi(x));
            worst_bc = std::max(worst_bc, bc);
            pass = pass && bc <= 1e-12;
            errors[k].push_back(generator_residual(S, GeneratorSpec::perturbed(phi), x, h, 2));
        }
    }
    std::vector<double> orders;
    for (const auto& e : errors) {
        const auto o = observed_orders(steps, e);
        pass = pass && all_at_least(o, 0.9);
        orders.insert(orders.end(), o.begin(), o.end());
    }
    return {pass, "orders " + fmt_list(orders) + " (need >= 0.9), boundary defect " + fmt(worst_bc)};
}

Outcome guard_rails() {
    namespace fs = std::filesystem;
    bool pass = true;
    std::ostringstream log, err;
    RunConfig cfg;
    cfg.kernel = "uniform";
    cfg.out = (fs::path(SGPERT_TEST_TMP) / "acceptance_guard").string();
    for (double t0 : {0.5, 1.0}) {
        cfg.t0 = t0;
        pass = pass && cmd_resolvent(cfg, log, err) == kExitConfigError;
        cfg.suites = {"dembart"};
        pass = pass && cmd_verify(cfg, log, err) == kExitConfigError;
    }

    const Grid g(kB, kL, kHs);
    const auto zero = BoundaryFunctional::zero(g, kP);
    const ShiftSemigroup T(g);
    const auto x0 = smooth_datum(g, kP);
    const double t0 = 0.5;
    double worst = 0.0;

    const auto picard = picard_semigroup(x0, zero, 1.0, kHs).path;
    const auto oracle = characteristics_oracle(x0, zero, 1.0, kHs).u;
    for (std::size_t j = 0; j < picard.frame_count(); ++j) {
        const auto shifted = T.apply(picard.time(j), x0);
        worst = std::max(worst, seminorm(picard.frame(j) - shifted, 3));
        worst = std::max(worst, seminorm(oracle.frame(j) - shifted, 3));
    }
    const auto f = smooth_forcing(g, kP, t0, kHs);
    worst = std::max(worst, seminorm(perturb_integral_h(f, t0, zero), 3));
    worst = std::max(worst, sup_seminorm(rbar_b(f, zero), 3));
    worst = std::max(worst, sup_seminorm(neumann_resolvent(f, zero, {}).sum - resolvent_path(f), 3));
    const auto cc = resolvent_crosscheck(f, zero, {});
    for (double d : cc.difference) worst = std::max(worst, d);
    worst = std::max(worst, seminorm(generator_apply(GeneratorSpec::perturbed(zero), x0) -
                                         generator_apply(GeneratorSpec::unperturbed(), x0), 3));
    pass = pass && worst <= 1e-12;
    return {pass, "K_eff >= 1 rejected with exit 2; Phi = 0 collapse " + fmt(worst) + " (bound 1e-12)"};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"semigroup axioms", semigroup_axioms},
        {"equicontinuity constant", equicontinuity},
        {"perturbation-integral bound", perturbation_bound},
        {"geometric Neumann decay", neumann_decay},
        {"generalized resolvent identity", dembart_i},
        {"oracle equivalence", oracle_equivalence},
        {"resolvent cross-check", resolvent_crosscheck_refinement},
        {"generator consistency", generator_consistency},
        {"guard rails", guard_rails},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu %-32s %s  %s  [%.1fs]\n", k + 1, criteria[k].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
