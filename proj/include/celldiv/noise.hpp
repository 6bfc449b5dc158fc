#pragma once

#include <cstdint>

#include "celldiv/grid.hpp"

namespace celldiv {

struct NoiseSpec {
    double epsilon = 0.0;
    std::uint64_t seed = 0;
};

// Clipped uniform perturbation N_eps_i = max(N_i + epsilon * r_i, 0) with
// r_i i.i.d. uniform on [-1/2, 1/2) and the node-0 value forced to zero.
// The draw is bit-reproducible: a std::mt19937_64 engine seeded with
// spec.seed produces one 64-bit word per node in index order, mapped as
// r = (word >> 11) * 2^-53 - 1/2 (the standard library distribution classes
// are implementation-defined and are deliberately not used).
GridFunction perturb(const GridFunction& n, const NoiseSpec& spec);

} // namespace celldiv
