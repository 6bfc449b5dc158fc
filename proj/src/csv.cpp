#include "celldiv/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace celldiv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

void write_grid_function_csv(std::ostream& os, const GridFunction& f,
                             const std::vector<std::string>& comments) {
    for (const auto& c : comments) os << "# " << c << "\n";
    os << "x,value\n";
    for (std::size_t i = 0; i < f.size(); ++i)
        os << format_double(f.grid.node(i)) << ',' << format_double(f.values[i]) << "\n";
}

GridFunction read_grid_function_csv(std::istream& is) {
    std::string line;
    std::vector<double> xs;
    std::vector<double> vals;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            if (line.rfind("x,", 0) == 0) continue;  // column header
        }
        auto fields = split_csv_line(line);
        if (fields.size() < 2)
            throw std::invalid_argument("grid function CSV: expected two columns");
        xs.push_back(std::stod(fields[0]));
        vals.push_back(std::stod(fields[1]));
    }
    if (xs.size() < 2)
        throw std::invalid_argument("grid function CSV: need at least two rows");
    const double x_max = xs.back();
    if (std::abs(xs.front()) > 1e-12 * std::max(1.0, x_max))
        throw std::invalid_argument("grid function CSV: grid must start at 0");
    Grid g(x_max, xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - g.node(i)) > 1e-9 * std::max(1.0, x_max))
            throw std::invalid_argument("grid function CSV: nodes are not uniformly spaced");
    return GridFunction(g, std::move(vals));
}

void write_grid_function_file(const std::string& path, const GridFunction& f,
                              const std::vector<std::string>& comments) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_grid_function_csv(os, f, comments);
}

GridFunction read_grid_function_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_grid_function_csv(is);
}

} // namespace celldiv
