#pragma once

#include <cstddef>
#include <vector>

namespace celldiv {

// Uniform grid on [0, x_max] with nodes x_i = i * dx, i = 0..n_points-1.
// The interval count I equals n_points - 1 and dx = x_max / I.
struct Grid {
    double x_max = 1.0;
    std::size_t n_points = 2;

    Grid() = default;
    Grid(double x_max_, std::size_t n_points_);

    double dx() const { return x_max / static_cast<double>(n_points - 1); }
    std::size_t last_index() const { return n_points - 1; }
    double node(std::size_t i) const { return static_cast<double>(i) * dx(); }

    bool operator==(const Grid&) const = default;
};

// Real-valued samples on the nodes of a Grid.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    explicit GridFunction(const Grid& g) : grid(g), values(g.n_points, 0.0) {}
    GridFunction(const Grid& g, std::vector<double> v);

    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    std::size_t size() const { return values.size(); }
};

// Left-rectangle quadrature dx * sum_i f_i over all nodes.
double integrate(const GridFunction& f);

// First moment dx * sum_i x_i f_i over all nodes.
double integrate_x(const GridFunction& f);

// Linear interpolation of f onto the nodes of target.
// Requires target.x_max <= f.grid.x_max; exact on linear data.
GridFunction resample(const GridFunction& f, const Grid& target);

// The value "f at index i/2" used by the dyadic recursions: f[i/2] for even
// i, the mean of the two flanking nodes for odd i. Requires i <= last index.
double half_index_value(const GridFunction& f, std::size_t i);

} // namespace celldiv
