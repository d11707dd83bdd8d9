#include "sgpert/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "sgpert/boundary_functional.hpp"
#include "sgpert/convergence.hpp"
#include "sgpert/evolve.hpp"
#include "sgpert/funcspace.hpp"
#include "sgpert/io.hpp"
#include "sgpert/perturbation.hpp"
#include "sgpert/report.hpp"
#include "sgpert/sampling.hpp"
#include "sgpert/semigroup.hpp"

namespace sgpert {

namespace {

namespace fs = std::filesystem;

struct Setup {
    Grid grid;
    BoundaryFunctional phi;
    double h_t;
};

Setup make_setup(const RunConfig& cfg) {
    validate(cfg);
    Grid grid(cfg.b, cfg.L, cfg.h_s);
    const bool preset = cfg.kernel == "zero" || cfg.kernel == "uniform" || cfg.kernel == "bump";
    BoundaryFunctional phi = preset ? kernel_preset(cfg.kernel, grid, cfg.p, cfg.kernel_scale)
                                    : read_kernel_csv(cfg.kernel, grid, cfg.p);
    return {grid, std::move(phi), cfg.time_step()};
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw ConfigError("cannot create output directory '" + cfg.out + "': " + ec.message());
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot write '" + path.string() + "'");
    return os;
}

void write_report(const RunConfig& cfg, const std::string& name, const CheckReport& report) {
    auto os = open_output(cfg, name);
    report.write_csv(os);
}

void write_json(const RunConfig& cfg, const std::string& name, const nlohmann::json& j) {
    auto os = open_output(cfg, name);
    os << j.dump(2) << '\n';
}

// Runs a command body and maps exceptions onto the exit-code contract.
template <typename Body>
int guarded(const char* what, std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ContractionError& e) {
        err << what << ": perturbation too large for horizon: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const ConvergenceError& e) {
        err << what << ": " << e.what() << '\n';
        return kExitCheckFailed;
    } catch (const Error& e) {
        err << what << ": " << e.what() << '\n';
        return kExitConfigError;
    }
}

void require_contraction(const BoundaryFunctional& phi, double t0) {
    const double k_eff = effective_contraction(phi, t0);
    if (k_eff >= 1.0)
        throw ContractionError("t0^{1/p} K = " + format_double(k_eff) + " >= 1; shrink t0 or the kernel");
}

GridFunction initial_datum(const RunConfig& cfg, const Grid& grid, const BoundaryFunctional& phi) {
    if (cfg.initial == "zero") return GridFunction::zero(grid, cfg.p);
    const GridFunction x = smooth_datum(grid, cfg.p);
    return cfg.initial == "compatible" ? compatible_datum(x, phi) : x;
}

TimePath forcing_path(const RunConfig& cfg, const Grid& grid, double h_t) {
    if (cfg.forcing == "zero") return TimePath::zero(grid, cfg.p, cfg.t0, h_t);
    return smooth_forcing(grid, cfg.p, cfg.t0, h_t);
}

// --- verify suites ---------------------------------------------------------

CheckReport seminorm_suite(const RunConfig& cfg, const Setup& s, Rng& rng) {
    CheckReport report("seminorm");
    const SeminormFamily family(s.grid, cfg.p, cfg.max_index());
    const int top = static_cast<int>(std::floor(cfg.L + 1e-9));
    double mono = 0.0, homog = 0.0, tri = 0.0, lift = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
        const GridFunction x = random_piecewise_linear(s.grid, cfg.p, rng);
        const GridFunction y = random_piecewise_linear(s.grid, cfg.p, rng);
        for (int n = 1; n <= top; ++n) {
            const double px = seminorm(x, n);
            if (n < top) mono = std::max(mono, px - seminorm(x, n + 1));
            homog = std::max(homog, std::abs(seminorm(x * -2.5, n) - 2.5 * px) / std::max(px, 1e-300));
            tri = std::max(tri, (seminorm(x + y, n) - px - seminorm(y, n)) / std::max(px, 1e-300));
        }
        const TimePath f = random_path(s.grid, cfg.p, cfg.t0, s.h_t, rng, false);
        for (int n : cfg.tracked) {
            const double sup = family.sup(f, n);
            lift = std::max(lift, (family.l1(f, n) - cfg.t0 * sup) / std::max(sup, 1e-300));
        }
    }
    report.add("monotone_in_n", 0, 0.0, std::max(0.0, mono), 1e-12);
    report.add("homogeneity", 0, 0.0, homog, 1e-12);
    report.add("triangle", 0, 0.0, std::max(0.0, tri), 1e-12);
    report.add("l1_below_t0_sup", 0, 0.0, std::max(0.0, lift), 1e-12);
    return report;
}

CheckReport semigroup_suite(const RunConfig& cfg, const Setup& s, Rng& rng) {
    const ShiftSemigroup T(s.grid);
    std::vector<GridFunction> testset;
    for (int k = 0; k < cfg.samples; ++k) testset.push_back(random_piecewise_linear(s.grid, cfg.p, rng));
    std::vector<double> times;
    const std::size_t steps = aligned_multiple(cfg.t_final, s.h_t, "t_final");
    const std::size_t every = std::max<std::size_t>(1, steps / 64);
    for (std::size_t k = 0; k <= steps; k += every) times.push_back(static_cast<double>(k) * s.h_t);
    CheckReport report = check_semigroup_axioms(T, times, testset, cfg.tracked);
    for (int n : cfg.tracked) {
        const auto eq = equicontinuity_constants(T, cfg.t0, n, testset, s.h_t);
        report.add("equicontinuity_M", n, cfg.t0, eq.M, 1.0 + 1e-12);
    }
    return report;
}

CheckReport dembart_suite(const RunConfig& cfg, const Setup& s) {
    const bool perturbed = !s.phi.is_zero();
    if (perturbed) require_contraction(s.phi, cfg.t0);
    const auto tests = smooth_test_paths(s.grid, cfg.p, cfg.t0, s.h_t, perturbed ? &s.phi : nullptr);
    const GeneratorSpec gen = perturbed ? GeneratorSpec::perturbed(s.phi) : GeneratorSpec::unperturbed();
    NeumannConfig ncfg;
    ncfg.tol = std::min(cfg.tol, 1e-12);
    ncfg.max_terms = cfg.max_terms;
    ncfg.tracked = cfg.tracked;
    const ResolventOperator resolvent = perturbed
        ? ResolventOperator([&](const TimePath& f) { return neumann_resolvent(f, s.phi, ncfg).sum; })
        : ResolventOperator(resolvent_path);

    // Discretization allowances. For the shift, A commutes with R exactly; the
    // perturbed resolvent breaks the boundary condition by O(h_t) at a single
    // node, which the difference stencil turns into O(h_s^{1/p}).
    double scale = 1.0;
    for (const auto& f : tests) scale = std::max(scale, sup_seminorm(f, cfg.max_index()));
    const double h_s = s.grid.step();
    DembartTolerances tol;
    tol.resolvent_identity = 10.0 * scale * (s.h_t * s.h_t + h_s);
    tol.time_commutation = 10.0 * scale * (s.h_t * s.h_t + h_s);
    tol.space_commutation = perturbed ? 10.0 * scale * (s.h_t + std::pow(h_s, 1.0 / cfg.p)) : 1e-10 * scale;
    tol.continuity_constant = perturbed ? 1.0 / (1.0 - effective_contraction(s.phi, cfg.t0)) + 1e-9 : 1.0 + 1e-12;

    CheckReport report("dembart");
    for (int n : cfg.tracked) report.append(dembart_check(resolvent, gen, tests, n, tol));
    return report;
}

CheckReport contraction_suite(const RunConfig& cfg, const Setup& s, Rng& rng) {
    std::vector<TimePath> samples;
    for (int k = 0; k < cfg.samples; ++k)
        samples.push_back(random_path(s.grid, cfg.p, cfg.t0, s.h_t, rng, false));
    CheckReport report("contraction");
    report.add("k_eff", 0, cfg.t0, effective_contraction(s.phi, cfg.t0));
    for (int n : cfg.tracked) {
        const auto est = estimate_contraction(s.phi, cfg.t0, samples, n);
        report.add("contraction_ratio", n, cfg.t0, est.ratio, est.bound * est.slack);
    }
    return report;
}

std::size_t snapshot_every(std::size_t last) { return std::max<std::size_t>(1, last / 64); }

void write_snapshots(std::ostream& os, const TimePath& f) {
    os << "t,s,value\n";
    const std::size_t every = snapshot_every(f.last_index());
    for (std::size_t j = 0; j <= f.last_index(); ++j) {
        if (j % every != 0 && j != f.last_index()) continue;
        const auto v = f.frame_values(j);
        const std::string t = format_double(f.time(j));
        for (std::size_t i = 0; i < v.size(); ++i)
            os << t << ',' << format_double(f.grid().point(i)) << ',' << format_double(v[i]) << '\n';
    }
}

struct EvolveLevel {
    EvolutionResult picard;
    OracleSolution oracle;
    CheckReport comparison;
    double discrepancy;
};

EvolveLevel evolve_level(const RunConfig& cfg, const Grid& grid, const BoundaryFunctional& phi, double h_t) {
    const GridFunction x0 = initial_datum(cfg, grid, phi);
    PicardOptions popts;
    popts.max_iter = cfg.max_iter;
    popts.tracked = cfg.tracked;
    EvolutionResult picard = picard_semigroup(x0, phi, cfg.t_final, h_t, popts);
    OracleSolution oracle = characteristics_oracle(x0, phi, cfg.t_final, h_t);
    CheckReport comparison = compare_solutions(picard.path, oracle.u, cfg.tracked, cfg.threshold);
    double worst = 0.0;
    for (int n : cfg.tracked) worst = std::max(worst, comparison.max_residual("max", n));
    return {std::move(picard), std::move(oracle), std::move(comparison), worst};
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    return guarded("verify", err, [&] {
        const Setup s = make_setup(cfg);
        Rng rng(cfg.seed);
        nlohmann::json summary = nlohmann::json::object();
        bool ok = true;
        for (const auto& suite : cfg.suites) {
            CheckReport report;
            if (suite == "seminorm") report = seminorm_suite(cfg, s, rng);
            else if (suite == "semigroup") report = semigroup_suite(cfg, s, rng);
            else if (suite == "dembart") report = dembart_suite(cfg, s);
            else report = contraction_suite(cfg, s, rng);
            write_report(cfg, "verify_" + suite + ".csv", report);
            summary[suite] = report.to_json();
            log << suite << ": " << (report.passed() ? "pass" : "FAIL") << " (" << report.rows().size()
                << " checks)\n";
            ok = ok && report.passed();
        }
        write_json(cfg, "verify_summary.json", summary);
        return ok ? kExitOk : kExitCheckFailed;
    });
}

int cmd_evolve(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    return guarded("evolve", err, [&] {
        const Setup s = make_setup(cfg);
        const EvolveLevel base = evolve_level(cfg, s.grid, s.phi, s.h_t);
        {
            auto os = open_output(cfg, "picard.csv");
            write_snapshots(os, base.picard.path);
        }
        {
            auto os = open_output(cfg, "oracle.csv");
            write_snapshots(os, base.oracle.u);
        }
        {
            auto os = open_output(cfg, "boundary_trace.csv");
            os << "t,y\n";
            for (std::size_t j = 0; j < base.oracle.boundary_trace.size(); ++j)
                os << format_double(static_cast<double>(j) * s.h_t) << ','
                   << format_double(base.oracle.boundary_trace[j]) << '\n';
        }
        write_report(cfg, "comparison.csv", base.comparison);

        bool ok = base.picard.converged && base.discrepancy <= cfg.threshold;
        nlohmann::json summary = {{"picard_iterations", base.picard.iterations},
                                  {"picard_converged", base.picard.converged},
                                  {"windows", base.picard.windows},
                                  {"max_discrepancy", base.discrepancy},
                                  {"max_boundary_defect", base.oracle.max_boundary_defect},
                                  {"comparison", base.comparison.to_json()}};
        log << "picard: " << base.picard.iterations << " sweeps in " << base.picard.windows << " window(s)"
            << (base.picard.converged ? "" : " (NOT converged)") << "\n"
            << "max discrepancy vs oracle: " << format_double(base.discrepancy) << '\n';

        if (cfg.refine > 0) {
            std::vector<double> steps{s.grid.step()}, errors{base.discrepancy};
            for (int level = 1; level <= cfg.refine; ++level) {
                const double scale = std::ldexp(1.0, -level);
                const Grid grid(cfg.b, cfg.L, cfg.h_s * scale);
                const BoundaryFunctional phi =
                    cfg.kernel == "zero" || cfg.kernel == "uniform" || cfg.kernel == "bump"
                        ? kernel_preset(cfg.kernel, grid, cfg.p, cfg.kernel_scale)
                        : read_kernel_csv(cfg.kernel, grid, cfg.p);
                const EvolveLevel fine = evolve_level(cfg, grid, phi, s.h_t * scale);
                steps.push_back(grid.step());
                errors.push_back(fine.discrepancy);
                ok = ok && fine.picard.converged;
            }
            const auto orders = observed_orders(steps, errors);
            auto os = open_output(cfg, "refinement.csv");
            os << "level,h_s,h_t,discrepancy,order\n";
            for (std::size_t k = 0; k < steps.size(); ++k) {
                os << k << ',' << format_double(steps[k]) << ',' << format_double(s.h_t * steps[k] / steps[0])
                   << ',' << format_double(errors[k]) << ',' << (k == 0 ? "" : format_double(orders[k - 1]))
                   << '\n';
                log << "level " << k << ": discrepancy " << format_double(errors[k])
                    << (k == 0 ? "" : ", order " + format_double(orders[k - 1])) << '\n';
            }
            summary["refinement"] = {{"steps", steps}, {"discrepancy", errors}, {"order", orders}};
        }
        write_json(cfg, "evolve_summary.json", summary);
        return ok ? kExitOk : kExitCheckFailed;
    });
}

int cmd_resolvent(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    return guarded("resolvent", err, [&] {
        const Setup s = make_setup(cfg);
        require_contraction(s.phi, cfg.t0);
        const TimePath f = forcing_path(cfg, s.grid, s.h_t);
        NeumannConfig ncfg;
        ncfg.tol = cfg.tol;
        ncfg.max_terms = cfg.max_terms;
        ncfg.tracked = cfg.tracked;
        const CrosscheckResult cc = resolvent_crosscheck(f, s.phi, ncfg, cfg.threshold);
        const NeumannResult& series = cc.series;

        CheckReport ratios("neumann");
        {
            auto os = open_output(cfg, "neumann_terms.csv");
            os << "term_index,n,increment_seminorm,bound\n";
            for (const auto& d : series.diagnostics)
                os << d.term << ',' << d.n << ',' << format_double(d.increment) << ',' << format_double(d.bound)
                   << '\n';
        }
        // Increment ratios between consecutive logged terms, per index; terms
        // already at rounding level carry no information.
        for (std::size_t w = 0; w < series.tracked.size(); ++w) {
            const int n = series.tracked[w];
            const double floor = 1e-13 * std::max(series.base_sup[w], 1e-300);
            const NeumannTerm* prev = nullptr;
            for (const auto& d : series.diagnostics) {
                if (d.n != n) continue;
                ratios.add("increment_bound", n, d.term, d.increment, d.bound * (1.0 + 1e-9) + floor);
                if (prev != nullptr && prev->increment > floor && d.increment > floor)
                    ratios.add("increment_ratio", n, d.term, d.increment / prev->increment, series.k_eff + 0.02);
                prev = &d;
            }
        }
        write_report(cfg, "neumann_ratios.csv", ratios);
        write_report(cfg, "crosscheck.csv", cc.report);

        const bool ok = series.converged && ratios.passed() && cc.report.passed();
        write_json(cfg, "resolvent_summary.json",
                   {{"k_eff", series.k_eff},
                    {"terms", series.last_term + 1},
                    {"converged", series.converged},
                    {"tracked", series.tracked},
                    {"error_bound", series.error_bound},
                    {"crosscheck_difference", cc.difference},
                    {"ratios", ratios.to_json()},
                    {"crosscheck", cc.report.to_json()}});
        log << "K_eff = " << format_double(series.k_eff) << ", " << series.last_term + 1 << " term(s)"
            << (series.converged ? "" : " (NOT converged)") << '\n';
        for (std::size_t w = 0; w < cc.tracked.size(); ++w)
            log << "cross-check n=" << cc.tracked[w] << ": " << format_double(cc.difference[w]) << '\n';
        return ok ? kExitOk : kExitCheckFailed;
    });
}

int cmd_contraction(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    return guarded("contraction", err, [&] {
        const Setup s = make_setup(cfg);
        Rng rng(cfg.seed);
        std::vector<TimePath> samples;
        for (int k = 0; k < cfg.samples; ++k)
            samples.push_back(random_path(s.grid, cfg.p, cfg.t0, s.h_t, rng, false));
        auto os = open_output(cfg, "contraction.csv");
        os << "n,t0,k_eff,ratio,bound,slack,used_samples,within_bound\n";
        bool ok = true;
        for (int n : cfg.tracked) {
            const auto est = estimate_contraction(s.phi, cfg.t0, samples, n);
            os << n << ',' << format_double(cfg.t0) << ',' << format_double(effective_contraction(s.phi, cfg.t0))
               << ',' << format_double(est.ratio) << ',' << format_double(est.bound) << ','
               << format_double(est.slack) << ',' << est.used_samples << ',' << (est.within_bound ? 1 : 0) << '\n';
            log << "n=" << n << ": ratio " << format_double(est.ratio) << " vs bound " << format_double(est.bound)
                << '\n';
            ok = ok && est.within_bound;
        }
        return ok ? kExitOk : kExitCheckFailed;
    });
}

}  // namespace sgpert
