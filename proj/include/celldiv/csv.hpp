#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "celldiv/grid.hpp"

namespace celldiv {

// Full-precision decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

// Splits one CSV line on commas; no quoting rules, fields may be empty.
std::vector<std::string> split_csv_line(const std::string& line);

// Two-column "x,value" layout. Comment lines start with '#' and precede the
// header; values are written in full double precision.
void write_grid_function_csv(std::ostream& os, const GridFunction& f,
                             const std::vector<std::string>& comments = {});
GridFunction read_grid_function_csv(std::istream& is);

void write_grid_function_file(const std::string& path, const GridFunction& f,
                              const std::vector<std::string>& comments = {});
GridFunction read_grid_function_file(const std::string& path);

} // namespace celldiv
