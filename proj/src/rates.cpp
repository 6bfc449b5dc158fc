#include "celldiv/rates.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "celldiv/csv.hpp"

namespace celldiv {

namespace {

std::vector<std::string> split_spec(const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(':', start);
        if (pos == std::string::npos) {
            parts.push_back(s.substr(start));
            break;
        }
        parts.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return parts;
}

double parse_number(const std::string& s, const std::string& spec) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("rate spec '" + spec + "': bad number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v))
        throw std::invalid_argument("rate spec '" + spec + "': bad number '" + s + "'");
    return v;
}

void expect_args(const std::vector<std::string>& parts, std::size_t lo, std::size_t hi,
                 const std::string& spec) {
    const std::size_t n = parts.size() - 1;
    if (n < lo || n > hi)
        throw std::invalid_argument("rate spec '" + spec + "': wrong number of arguments");
}

std::function<double(double)> interpolant(GridFunction f) {
    return [f = std::move(f)](double x) {
        const double dx = f.grid.dx();
        const std::size_t last = f.grid.last_index();
        if (x <= 0.0) return f.values.front();
        double pos = x / dx;
        if (pos >= static_cast<double>(last)) return f.values.back();
        const auto j = static_cast<std::size_t>(pos);
        const double t = pos - static_cast<double>(j);
        return f.values[j] + t * (f.values[j + 1] - f.values[j]);
    };
}

} // namespace

DivisionRate parse_rate(const std::string& spec) {
    const std::vector<std::string> parts = split_spec(spec);
    const std::string& kind = parts.front();
    DivisionRate rate;
    rate.spec = spec;

    if (kind == "const") {
        expect_args(parts, 1, 1, spec);
        const double v = parse_number(parts[1], spec);
        if (v < 0.0) throw std::invalid_argument("rate spec '" + spec + "': negative rate");
        rate.eval = [v](double) { return v; };
    } else if (kind == "jump") {
        expect_args(parts, 2, 3, spec);
        const double v1 = parse_number(parts[1], spec);
        const double v2 = parse_number(parts[2], spec);
        const double xj = (parts.size() > 3) ? parse_number(parts[3], spec) : 2.0;
        if (v1 < 0.0 || v2 < 0.0)
            throw std::invalid_argument("rate spec '" + spec + "': negative rate");
        if (xj <= 0.0)
            throw std::invalid_argument("rate spec '" + spec + "': jump location must be > 0");
        rate.eval = [v1, v2, xj](double x) { return x < xj ? v1 : v2; };
    } else if (kind == "gauss-bump") {
        expect_args(parts, 4, 4, spec);
        const double base = parse_number(parts[1], spec);
        const double amp = parse_number(parts[2], spec);
        const double center = parse_number(parts[3], spec);
        const double width = parse_number(parts[4], spec);
        if (width <= 0.0)
            throw std::invalid_argument("rate spec '" + spec + "': width must be > 0");
        if (base < 0.0 || base + amp < 0.0)
            throw std::invalid_argument("rate spec '" + spec + "': rate dips below zero");
        rate.eval = [base, amp, center, width](double x) {
            const double u = (x - center) / width;
            return base + amp * std::exp(-u * u);
        };
    } else if (kind == "file") {
        expect_args(parts, 1, 1, spec);
        GridFunction f = read_grid_function_file(parts[1]);
        for (double v : f.values)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("rate spec '" + spec + "': file holds negative or non-finite values");
        rate.eval = interpolant(std::move(f));
    } else {
        throw std::invalid_argument("rate spec '" + spec + "': unknown kind '" + kind + "'");
    }
    return rate;
}

GridFunction DivisionRate::sample(const Grid& g) const {
    GridFunction out(g);
    for (std::size_t i = 0; i < out.size(); ++i)
        out.values[i] = eval(g.node(i));
    return out;
}

} // namespace celldiv
