#pragma once

// CSV and JSON serialization. CSV files always carry a header row, use '.' as
// decimal separator and print doubles in shortest round-trip form.

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "sgpert/boundary_functional.hpp"
#include "sgpert/funcspace.hpp"

namespace sgpert {

std::string format_double(double v);

// Header: s,value
void write_csv(std::ostream& os, const GridFunction& x);
// Reads s,value rows on a uniform grid; the grid is inferred from the s column.
GridFunction read_grid_function_csv(std::istream& is, double p);

// Header: t,s,value
void write_csv(std::ostream& os, const TimePath& f);

// {"b", "L", "h_s", "p", "values": [...]}
nlohmann::json to_json(const GridFunction& x);
GridFunction grid_function_from_json(const nlohmann::json& j);

// {"b", "L", "h_s", "p", "t0", "h_t", "frames": [[...], ...]}
nlohmann::json to_json(const TimePath& f);
TimePath time_path_from_json(const nlohmann::json& j);

// Reads a kernel as (s, value) rows, header optional, on any abscissae; the
// density is linearly interpolated onto `grid` and set to zero outside the
// sampled range and outside [-1, b].
BoundaryFunctional read_kernel_csv(std::istream& is, const Grid& grid, double p);
BoundaryFunctional read_kernel_csv(const std::string& path, const Grid& grid, double p);

}  // namespace sgpert
