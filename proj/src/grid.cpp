#include "celldiv/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace celldiv {

Grid::Grid(double x_max_, std::size_t n_points_) : x_max(x_max_), n_points(n_points_) {
    if (!(x_max_ > 0.0) || !std::isfinite(x_max_))
        throw std::invalid_argument("Grid: x_max must be positive and finite");
    if (n_points_ < 2)
        throw std::invalid_argument("Grid: need at least two nodes");
}

GridFunction::GridFunction(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n_points)
        throw std::invalid_argument("GridFunction: value count does not match grid");
}

double integrate(const GridFunction& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return f.grid.dx() * s;
}

double integrate_x(const GridFunction& f) {
    const double dx = f.grid.dx();
    double s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        s += static_cast<double>(i) * f.values[i];
    // x_i = i * dx, so the moment carries dx twice.
    return dx * dx * s;
}

GridFunction resample(const GridFunction& f, const Grid& target) {
    if (target.x_max > f.grid.x_max * (1.0 + 1e-12))
        throw std::invalid_argument("resample: target domain exceeds source domain");
    if (target == f.grid) return f;
    const double dxs = f.grid.dx();
    const std::size_t last = f.grid.last_index();
    GridFunction out(target);
    for (std::size_t j = 0; j < target.n_points; ++j) {
        const double x = target.node(j);
        double s = x / dxs;
        std::size_t j0 = static_cast<std::size_t>(s);
        if (j0 >= last) j0 = last - 1;
        const double t = s - static_cast<double>(j0);
        out.values[j] = f.values[j0] + t * (f.values[j0 + 1] - f.values[j0]);
    }
    return out;
}

double half_index_value(const GridFunction& f, std::size_t i) {
    if (i > f.grid.last_index())
        throw std::out_of_range("half_index_value: index beyond grid");
    if (i % 2 == 0) return f.values[i / 2];
    return 0.5 * (f.values[(i - 1) / 2] + f.values[(i + 1) / 2]);
}

} // namespace celldiv
