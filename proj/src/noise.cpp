#include "celldiv/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace celldiv {

GridFunction perturb(const GridFunction& n, const NoiseSpec& spec) {
    if (!(spec.epsilon >= 0.0) || !std::isfinite(spec.epsilon))
        throw std::invalid_argument("perturb: epsilon must be finite and >= 0");

    std::mt19937_64 engine(spec.seed);
    GridFunction out(n.grid);
    for (std::size_t i = 0; i < n.size(); ++i) {
        const double r = std::ldexp(static_cast<double>(engine() >> 11), -53) - 0.5;
        out.values[i] = std::max(n.values[i] + spec.epsilon * r, 0.0);
    }
    out.values[0] = 0.0;
    return out;
}

} // namespace celldiv
