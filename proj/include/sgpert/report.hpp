#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sgpert {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct CheckRow {
    std::string name;
    int n = 0;
    double t = 0.0;
    double residual = 0.0;
    double bound = kUnbounded;
    bool pass = true;
};

// Result of a verification suite: one row per check.
class CheckReport {
public:
    explicit CheckReport(std::string suite = {});

    // pass = residual <= bound (NaN residuals fail).
    void add(std::string name, int n, double t, double residual, double bound = kUnbounded);
    void add(CheckRow row);
    void append(const CheckReport& other);

    const std::string& suite() const noexcept { return suite_; }
    const std::vector<CheckRow>& rows() const noexcept { return rows_; }
    bool passed() const;
    // Largest residual among rows called `name` (optionally for index n).
    double max_residual(std::string_view name, int n = -1) const;
    const CheckRow* find(std::string_view name, int n = -1) const;

    nlohmann::json to_json() const;
    // Header: name,n,t,residual,bound,pass
    void write_csv(std::ostream& os) const;

private:
    std::string suite_;
    std::vector<CheckRow> rows_;
};

}  // namespace sgpert
