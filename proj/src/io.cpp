#include "sgpert/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sgpert {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

namespace {

std::vector<std::pair<double, double>> read_pairs(std::istream& is, const char* what) {
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw Error(std::string(what) + ": expected two columns on line " +
                                                    std::to_string(lineno));
        try {
            std::size_t used = 0;
            const double s = std::stod(line.substr(0, comma), &used);
            const double v = std::stod(line.substr(comma + 1));
            rows.emplace_back(s, v);
        } catch (const std::invalid_argument&) {
            if (rows.empty() && lineno == 1) continue;  // header
            throw Error(std::string(what) + ": malformed number on line " + std::to_string(lineno));
        }
    }
    if (rows.empty()) throw Error(std::string(what) + ": no data rows");
    return rows;
}

Grid grid_from_json(const nlohmann::json& j) {
    return Grid(j.at("b").get<double>(), j.at("L").get<double>(), j.at("h_s").get<double>());
}

}  // namespace

void write_csv(std::ostream& os, const GridFunction& x) {
    os << "s,value\n";
    for (std::size_t i = 0; i < x.size(); ++i)
        os << format_double(x.grid().point(i)) << ',' << format_double(x[i]) << '\n';
}

GridFunction read_grid_function_csv(std::istream& is, double p) {
    const auto rows = read_pairs(is, "grid function csv");
    if (rows.size() < 2) throw Error("grid function csv: need at least two rows");
    const double left = rows.front().first, b = rows.back().first;
    const double h = (b - left) / static_cast<double>(rows.size() - 1);
    Grid grid(b, -left, h);
    std::vector<double> v;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (std::abs(rows[i].first - grid.point(i)) > 1e-9 * std::max(1.0, std::abs(b - left)))
            throw GridMismatch("grid function csv: abscissae are not uniform");
        v.push_back(rows[i].second);
    }
    return {grid, p, std::move(v)};
}

void write_csv(std::ostream& os, const TimePath& f) {
    os << "t,s,value\n";
    const Grid& g = f.grid();
    for (std::size_t j = 0; j < f.frame_count(); ++j) {
        const auto v = f.frame_values(j);
        const std::string t = format_double(f.time(j));
        for (std::size_t i = 0; i < v.size(); ++i) os << t << ',' << format_double(g.point(i)) << ',' << format_double(v[i]) << '\n';
    }
}

nlohmann::json to_json(const GridFunction& x) {
    const Grid& g = x.grid();
    return {{"b", g.b()}, {"L", g.left_extent()}, {"h_s", g.step()}, {"p", x.exponent()},
            {"values", std::vector<double>(x.values().begin(), x.values().end())}};
}

GridFunction grid_function_from_json(const nlohmann::json& j) {
    return {grid_from_json(j), j.at("p").get<double>(), j.at("values").get<std::vector<double>>()};
}

nlohmann::json to_json(const TimePath& f) {
    const Grid& g = f.grid();
    nlohmann::json frames = nlohmann::json::array();
    for (std::size_t k = 0; k < f.frame_count(); ++k) {
        const auto v = f.frame_values(k);
        frames.push_back(std::vector<double>(v.begin(), v.end()));
    }
    return {{"b", g.b()}, {"L", g.left_extent()}, {"h_s", g.step()}, {"p", f.exponent()},
            {"t0", f.horizon()}, {"h_t", f.time_step()}, {"frames", frames}};
}

TimePath time_path_from_json(const nlohmann::json& j) {
    const Grid g = grid_from_json(j);
    std::vector<double> data;
    for (const auto& frame : j.at("frames")) {
        const auto v = frame.get<std::vector<double>>();
        if (v.size() != g.size()) throw GridMismatch("time path json: frame length does not match the grid");
        data.insert(data.end(), v.begin(), v.end());
    }
    return {g, j.at("p").get<double>(), j.at("t0").get<double>(), j.at("h_t").get<double>(), std::move(data)};
}

BoundaryFunctional read_kernel_csv(std::istream& is, const Grid& grid, double p) {
    auto rows = read_pairs(is, "kernel csv");
    std::sort(rows.begin(), rows.end());
    const double lo = std::max(rows.front().first, -1.0);
    const double hi = std::min(rows.back().first, grid.b());
    return BoundaryFunctional(GridFunction::sample(grid, p, [&](double s) {
        if (s < lo - 1e-12 || s > hi + 1e-12) return 0.0;
        if (rows.size() == 1) return rows.front().second;
        auto it = std::lower_bound(rows.begin(), rows.end(), std::pair{s, -HUGE_VAL});
        if (it == rows.begin()) return it->second;
        if (it == rows.end()) return rows.back().second;
        const auto& [s1, v1] = *it;
        const auto& [s0, v0] = *(it - 1);
        if (s1 == s0) return v1;
        const double w = (s - s0) / (s1 - s0);
        return (1.0 - w) * v0 + w * v1;
    }));
}

BoundaryFunctional read_kernel_csv(const std::string& path, const Grid& grid, double p) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open kernel file '" + path + "'");
    return read_kernel_csv(in, grid, p);
}

}  // namespace sgpert
