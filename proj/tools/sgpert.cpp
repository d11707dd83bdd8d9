// sgpert: batch front end for the shift-semigroup perturbation toolkit.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sgpert/commands.hpp"
#include "sgpert/config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Shift semigroups with boundary perturbations: verification, evolution and resolvent runs"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> refine;
    std::optional<double> threshold;
    std::vector<std::string> overrides;
    bool print_config = false;

    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--out", out, "output directory for CSV/JSON reports");
    app.add_option("--seed", seed, "seed for sampled test data");
    app.add_option("--refine", refine, "number of joint (h_s, h_t) halvings for evolve");
    app.add_option("--threshold", threshold, "discrepancy threshold (evolve) / cross-check allowance (resolvent)");
    app.add_option("--set", overrides, "override a config key, e.g. --set kernel=bump")->take_all();
    app.add_flag("--print-config", print_config, "print the effective configuration before running");

    auto* verify = app.add_subcommand("verify", "run the verification suites");
    auto* evolve = app.add_subcommand("evolve", "Picard evolution against the characteristics oracle");
    auto* resolvent = app.add_subcommand("resolvent", "Neumann-series resolvent and its cross-check");
    auto* contraction = app.add_subcommand("contraction", "empirical contraction ratio of the perturbation");
    for (auto* sub : {verify, evolve, resolvent, contraction}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? sgpert::kExitOk : sgpert::kExitConfigError;
    }

    sgpert::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = sgpert::load_config(config_path);
        for (const auto& kv : overrides) sgpert::apply_assignment(cfg, kv);
        if (out) cfg.out = *out;
        if (seed) cfg.seed = *seed;
        if (refine) cfg.refine = *refine;
        if (threshold) cfg.threshold = *threshold;
        sgpert::validate(cfg);
    } catch (const sgpert::Error& e) {
        std::cerr << e.what() << '\n';
        return sgpert::kExitConfigError;
    }
    if (print_config) std::cout << sgpert::to_text(cfg);

    if (*verify) return sgpert::cmd_verify(cfg, std::cout, std::cerr);
    if (*evolve) return sgpert::cmd_evolve(cfg, std::cout, std::cerr);
    if (*resolvent) return sgpert::cmd_resolvent(cfg, std::cout, std::cerr);
    return sgpert::cmd_contraction(cfg, std::cout, std::cerr);
}
