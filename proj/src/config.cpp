#include "sgpert/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "sgpert/funcspace.hpp"
#include "sgpert/io.hpp"

namespace sgpert {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> items;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) items.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return items;
}

// Accepts plain decimals and simple fractions such as 1/256.
double parse_real(std::string_view key, std::string_view text) {
    auto number = [&](std::string_view part) {
        double v = 0.0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
        if (res.ec != std::errc() || res.ptr != part.data() + part.size() || !std::isfinite(v))
            throw ConfigError("config: '" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
        return v;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return number(text);
    const double den = number(trim(text.substr(slash + 1)));
    if (den == 0.0) throw ConfigError("config: '" + std::string(key) + "' divides by zero");
    return number(trim(text.substr(0, slash))) / den;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    Int v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw ConfigError("config: '" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
    return v;
}

}  // namespace

int RunConfig::max_index() const {
    int n = 1;
    for (int k : tracked) n = std::max(n, k);
    return n;
}

void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value) {
    key = trim(key);
    value = trim(value);
    if (value.empty()) throw ConfigError("config: '" + std::string(key) + "' has no value");
    if (key == "b") cfg.b = parse_real(key, value);
    else if (key == "L") cfg.L = parse_real(key, value);
    else if (key == "h_s") cfg.h_s = parse_real(key, value);
    else if (key == "p") cfg.p = parse_real(key, value);
    else if (key == "kernel") cfg.kernel = std::string(value);
    else if (key == "kernel_scale") cfg.kernel_scale = parse_real(key, value);
    else if (key == "t0") cfg.t0 = parse_real(key, value);
    else if (key == "t_final") cfg.t_final = parse_real(key, value);
    else if (key == "h_t") cfg.h_t = parse_real(key, value);
    else if (key == "tol") cfg.tol = parse_real(key, value);
    else if (key == "max_terms") cfg.max_terms = parse_int<int>(key, value);
    else if (key == "max_iter") cfg.max_iter = parse_int<int>(key, value);
    else if (key == "tracked") {
        cfg.tracked.clear();
        for (auto item : split_list(value)) cfg.tracked.push_back(parse_int<int>(key, item));
    } else if (key == "initial") cfg.initial = std::string(value);
    else if (key == "forcing") cfg.forcing = std::string(value);
    else if (key == "samples") cfg.samples = parse_int<int>(key, value);
    else if (key == "suites") {
        cfg.suites.clear();
        for (auto item : split_list(value)) cfg.suites.emplace_back(item);
    } else if (key == "out") cfg.out = std::string(value);
    else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "refine") cfg.refine = parse_int<int>(key, value);
    else if (key == "threshold") cfg.threshold = parse_real(key, value);
    else throw ConfigError("config: unknown key '" + std::string(key) + "'");
}

void apply_assignment(RunConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos)
        throw ConfigError("config: expected key = value, got '" + std::string(assignment) + "'");
    apply_setting(cfg, assignment.substr(0, eq), assignment.substr(eq + 1));
}

RunConfig parse_config(std::string_view text, RunConfig base) {
    std::size_t lineno = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        try {
            apply_assignment(base, line);
        } catch (const ConfigError& e) {
            throw ConfigError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        }
    }
    return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), std::move(base));
}

void validate(const RunConfig& cfg) {
    auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
    if (!(cfg.p > 1.0) || !std::isfinite(cfg.p)) fail("p must lie in (1, inf)");
    if (!(cfg.b > 0.0)) fail("b must be positive");
    if (!(cfg.h_s > 0.0)) fail("h_s must be positive");
    if (!(cfg.L >= 1.0)) fail("L must be at least 1 so the kernel window [-1, b] fits");
    if (!(cfg.t0 > 0.0) || !(cfg.t_final > 0.0)) fail("t0 and t_final must be positive");
    if (cfg.h_t < 0.0) fail("h_t must be non-negative (0 selects h_s)");
    if (!(cfg.tol > 0.0)) fail("tol must be positive");
    if (cfg.max_terms < 1) fail("max_terms must be >= 1");
    if (cfg.max_iter < 1) fail("max_iter must be >= 1");
    if (cfg.samples < 1) fail("samples must be >= 1");
    if (cfg.refine < 0) fail("refine must be >= 0");
    if (!(cfg.threshold > 0.0)) fail("threshold must be positive");
    if (cfg.tracked.empty()) fail("tracked needs at least one index");
    for (int n : cfg.tracked)
        if (n < 1 || static_cast<double>(n) > cfg.L) fail("tracked index " + std::to_string(n) + " outside [1, L]");
    if (cfg.initial != "smooth" && cfg.initial != "zero" && cfg.initial != "compatible")
        fail("initial must be smooth, zero or compatible");
    if (cfg.forcing != "smooth" && cfg.forcing != "zero") fail("forcing must be smooth or zero");
    for (const auto& s : cfg.suites)
        if (s != "seminorm" && s != "semigroup" && s != "dembart" && s != "contraction")
            fail("unknown suite '" + s + "'");
    try {
        const Grid grid(cfg.b, cfg.L, cfg.h_s);
        const double h_t = cfg.time_step();
        aligned_multiple(h_t, cfg.h_s, "h_t");
        aligned_multiple(cfg.t0, h_t, "t0");
        aligned_multiple(cfg.t_final, h_t, "t_final");
        (void)grid;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        fail(e.what());
    }
}

std::string to_text(const RunConfig& cfg) {
    std::ostringstream os;
    auto join = [](const auto& items) {
        std::string s;
        for (const auto& it : items) {
            if (!s.empty()) s += ',';
            if constexpr (std::is_same_v<std::decay_t<decltype(it)>, std::string>) s += it;
            else s += std::to_string(it);
        }
        return s;
    };
    os << "b = " << format_double(cfg.b) << '\n'
       << "L = " << format_double(cfg.L) << '\n'
       << "h_s = " << format_double(cfg.h_s) << '\n'
       << "p = " << format_double(cfg.p) << '\n'
       << "kernel = " << cfg.kernel << '\n'
       << "kernel_scale = " << format_double(cfg.kernel_scale) << '\n'
       << "t0 = " << format_double(cfg.t0) << '\n'
       << "t_final = " << format_double(cfg.t_final) << '\n'
       << "h_t = " << format_double(cfg.time_step()) << '\n'
       << "tol = " << format_double(cfg.tol) << '\n'
       << "max_terms = " << cfg.max_terms << '\n'
       << "max_iter = " << cfg.max_iter << '\n'
       << "tracked = " << join(cfg.tracked) << '\n'
       << "initial = " << cfg.initial << '\n'
       << "forcing = " << cfg.forcing << '\n'
       << "samples = " << cfg.samples << '\n'
       << "suites = " << join(cfg.suites) << '\n'
       << "out = " << cfg.out << '\n'
       << "seed = " << cfg.seed << '\n'
       << "refine = " << cfg.refine << '\n'
       << "threshold = " << format_double(cfg.threshold) << '\n';
    return os.str();
}

}  // namespace sgpert
