#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sgpert/error.hpp"

namespace sgpert {

class ConfigError : public Error {
public:
    using Error::Error;
};

// Batch run configuration. Text form is one `key = value` per line, '#'
// starts a comment. Keys match the field names below.
struct RunConfig {
    // grid
    double b = 1.0;
    double L = 4.0;
    double h_s = 1.0 / 256.0;
    double p = 2.0;
    // kernel: preset name (zero, uniform, bump) or a CSV path
    std::string kernel = "zero";
    double kernel_scale = 1.0;
    // horizons; h_t <= 0 means h_t = h_s
    double t0 = 0.125;
    double t_final = 1.0;
    double h_t = 0.0;
    // Neumann / Picard
    double tol = 1e-10;
    int max_terms = 64;
    int max_iter = 100;
    std::vector<int> tracked{1, 2, 3};
    // data presets
    std::string initial = "smooth";   // smooth, zero, compatible
    std::string forcing = "smooth";   // smooth, zero
    int samples = 20;
    // suites for `verify`
    std::vector<std::string> suites{"seminorm", "semigroup", "dembart", "contraction"};
    std::string out = "sgpert_out";
    std::uint64_t seed = 42;
    int refine = 0;
    double threshold = 1e-2;

    double time_step() const { return h_t > 0.0 ? h_t : h_s; }
    int max_index() const;
};

// Applies one `key = value` assignment; ConfigError on unknown keys or
// malformed values.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value);
void apply_assignment(RunConfig& cfg, std::string_view assignment);

RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

// Alignment and range checks; ConfigError with a diagnostic on failure.
void validate(const RunConfig& cfg);

std::string to_text(const RunConfig& cfg);

}  // namespace sgpert
