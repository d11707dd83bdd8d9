#include <cmath>
#include <sstream>
#include <string>

#include "doctest.h"

#include "sgpert/config.hpp"
#include "sgpert/io.hpp"
#include "sgpert/report.hpp"
#include "sgpert/sampling.hpp"

using namespace sgpert;

TEST_SUITE("io_config") {

TEST_CASE("format_double round-trips") {
    for (double v : {0.0, 1.0, -0.1, 1.0 / 3.0, 6.02214076e23, 2.2250738585072014e-308, -1e-300}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("grid function CSV and JSON") {
    const Grid g(1.0, 2.0, 1.0 / 16.0);
    const auto x = GridFunction::sample(g, 3.0, [](double s) { return std::sin(7.0 * s) / 3.0; });

    std::stringstream ss;
    write_csv(ss, x);
    CHECK(ss.str().rfind("s,value\n", 0) == 0);
    const auto back = read_grid_function_csv(ss, 3.0);
    CHECK(back.grid().size() == g.size());
    CHECK(back.grid().b() == doctest::Approx(1.0));
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(back[i] == x[i]);

    const auto j = to_json(x);
    const auto from = grid_function_from_json(nlohmann::json::parse(j.dump()));
    CHECK(from.exponent() == 3.0);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(from[i] == x[i]);

    std::stringstream bad("s,value\n-0.4,1\n-0.3,2\n0.1,3\n");
    CHECK_THROWS_AS(read_grid_function_csv(bad, 2.0), GridMismatch);
    std::stringstream junk("s,value\n0,1\nx,y\n");
    CHECK_THROWS_AS(read_grid_function_csv(junk, 2.0), Error);
}

TEST_CASE("time path CSV and JSON") {
    const Grid g(1.0, 1.0, 1.0 / 8.0);
    const auto f = smooth_forcing(g, 2.0, 0.5, 0.25);
    std::stringstream ss;
    write_csv(ss, f);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "t,s,value");
    std::size_t lines = 0;
    for (std::string line; std::getline(ss, line);) ++lines;
    CHECK(lines == f.frame_count() * g.size());

    const auto back = time_path_from_json(nlohmann::json::parse(to_json(f).dump()));
    CHECK(back.frame_count() == f.frame_count());
    CHECK(back.time_step() == 0.25);
    CHECK(sup_seminorm(back - f, 1) == 0.0);

    auto j = to_json(f);
    j["frames"][1].erase(0);
    CHECK_THROWS_AS(time_path_from_json(j), GridMismatch);
}

TEST_CASE("kernel CSV") {
    const Grid g(1.0, 4.0, 1.0 / 64.0);
    SUBCASE("constant density over a coarse sampling") {
        std::stringstream ss("s,k\n-1,1\n0,1\n1,1\n");
        const auto phi = read_kernel_csv(ss, g, 2.0);
        const auto ref = BoundaryFunctional::uniform(g, 2.0);
        CHECK(phi.bound() == doctest::Approx(ref.bound()).epsilon(1e-14));
        const auto x = smooth_datum(g, 2.0);
        CHECK(phi(x) == doctest::Approx(ref(x)).epsilon(1e-13));
    }
    SUBCASE("linear interpolation and zero outside the samples") {
        std::stringstream ss("0.5,2\n0,0\n");  // unsorted, no header
        const auto phi = read_kernel_csv(ss, g, 2.0);
        CHECK(phi.kernel()[g.index_of(0.25)] == doctest::Approx(1.0));
        CHECK(phi.kernel()[g.index_of(0.75)] == 0.0);
        CHECK(phi.kernel()[g.index_of(-0.5)] == 0.0);
    }
    SUBCASE("mass left of -1 is clipped") {
        std::stringstream ss("-3,1\n1,1\n");
        const auto phi = read_kernel_csv(ss, g, 2.0);
        CHECK(phi.kernel()[g.index_of(-2.0)] == 0.0);
        CHECK(phi.kernel()[g.index_of(-1.0)] == 1.0);
    }
    SUBCASE("errors") {
        std::stringstream empty("s,k\n");
        CHECK_THROWS_AS(read_kernel_csv(empty, g, 2.0), Error);
        std::stringstream one_col("1\n2\n");
        CHECK_THROWS_AS(read_kernel_csv(one_col, g, 2.0), Error);
        CHECK_THROWS_AS(read_kernel_csv(std::string("/nonexistent/kernel.csv"), g, 2.0), Error);
    }
}

TEST_CASE("reports") {
    CheckReport r("demo");
    r.add("a", 1, 0.0, 1e-13, 1e-12);
    r.add("a", 2, 0.5, 3.0);
    CHECK(r.passed());
    CHECK(r.max_residual("a") == 3.0);
    CHECK(r.max_residual("a", 1) == 1e-13);
    r.add("b", 1, 0.0, std::nan(""), 1.0);
    CHECK_FALSE(r.passed());

    const auto j = r.to_json();
    CHECK(j["suite"] == "demo");
    CHECK(j["pass"] == false);
    CHECK(j["checks"][1]["bound"].is_null());
    CHECK(j["checks"][0]["bound"] == 1e-12);

    std::stringstream ss;
    r.write_csv(ss);
    std::string header;
    std::getline(ss, header);
    CHECK(header == "name,n,t,residual,bound,pass");
}

TEST_CASE("config parsing") {
    const auto cfg = parse_config(R"(
# grid
b = 2
h_s = 1/128   # fraction
kernel = bump
tracked = 1, 2
suites = seminorm,dembart
seed = 7
)");
    CHECK(cfg.b == 2.0);
    CHECK(cfg.h_s == 1.0 / 128.0);
    CHECK(cfg.kernel == "bump");
    CHECK(cfg.tracked == std::vector<int>{1, 2});
    CHECK(cfg.suites == std::vector<std::string>{"seminorm", "dembart"});
    CHECK(cfg.seed == 7u);
    CHECK(cfg.time_step() == cfg.h_s);
    CHECK_NOTHROW(validate(cfg));

    const auto again = parse_config(to_text(cfg));
    CHECK(again.b == cfg.b);
    CHECK(again.h_s == cfg.h_s);
    CHECK(again.tracked == cfg.tracked);
    CHECK(again.suites == cfg.suites);
    CHECK(again.seed == cfg.seed);

    CHECK_THROWS_AS(parse_config("nope = 1"), ConfigError);
    CHECK_THROWS_AS(parse_config("b = x"), ConfigError);
    CHECK_THROWS_AS(parse_config("b"), ConfigError);
    CHECK_THROWS_AS(parse_config("h_s = 1/0"), ConfigError);
    CHECK_THROWS_AS(parse_config("samples = 2.5"), ConfigError);
    try {
        parse_config("b = 1\n\nmax_terms = many\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
}

TEST_CASE("config validation") {
    auto bad = [](const char* assignment) {
        RunConfig cfg;
        apply_assignment(cfg, assignment);
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    };
    CHECK_NOTHROW(validate(RunConfig{}));
    bad("p = 1");
    bad("b = 0");
    bad("L = 0.5");
    bad("h_s = -1");
    bad("h_t = 0.003");
    bad("t0 = 0.1");
    bad("t_final = 0.3333");
    bad("tol = 0");
    bad("max_terms = 0");
    bad("samples = 0");
    bad("tracked = 5");
    bad("initial = random");
    bad("forcing = ramp");
    bad("suites = seminorm,bogus");
    bad("threshold = 0");
}

}  // TEST_SUITE
