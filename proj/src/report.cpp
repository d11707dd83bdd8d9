#include "sgpert/report.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "sgpert/io.hpp"

namespace sgpert {

CheckReport::CheckReport(std::string suite) : suite_(std::move(suite)) {}

void CheckReport::add(std::string name, int n, double t, double residual, double bound) {
    const bool pass = !std::isnan(residual) && residual <= bound;
    rows_.push_back({std::move(name), n, t, residual, bound, pass});
}

void CheckReport::add(CheckRow row) { rows_.push_back(std::move(row)); }

void CheckReport::append(const CheckReport& other) {
    rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

bool CheckReport::passed() const {
    return std::all_of(rows_.begin(), rows_.end(), [](const CheckRow& r) { return r.pass; });
}

double CheckReport::max_residual(std::string_view name, int n) const {
    double worst = 0.0;
    for (const auto& r : rows_)
        if (r.name == name && (n < 0 || r.n == n)) worst = std::max(worst, r.residual);
    return worst;
}

const CheckRow* CheckReport::find(std::string_view name, int n) const {
    for (const auto& r : rows_)
        if (r.name == name && (n < 0 || r.n == n)) return &r;
    return nullptr;
}

nlohmann::json CheckReport::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : rows_) {
        nlohmann::json row{{"name", r.name}, {"n", r.n}, {"t", r.t}, {"residual", r.residual}, {"pass", r.pass}};
        // JSON has no infinity; an unbounded check carries a null bound.
        row["bound"] = std::isfinite(r.bound) ? nlohmann::json(r.bound) : nlohmann::json(nullptr);
        checks.push_back(std::move(row));
    }
    return {{"suite", suite_}, {"pass", passed()}, {"checks", std::move(checks)}};
}

void CheckReport::write_csv(std::ostream& os) const {
    os << "name,n,t,residual,bound,pass\n";
    for (const auto& r : rows_) {
        os << r.name << ',' << r.n << ',' << format_double(r.t) << ',' << format_double(r.residual) << ','
           << format_double(r.bound) << ',' << (r.pass ? "true" : "false") << '\n';
    }
}

}  // namespace sgpert
