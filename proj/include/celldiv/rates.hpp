#pragma once

#include <functional>
#include <string>

#include "celldiv/grid.hpp"

namespace celldiv {

// Division rate B(x) >= 0, built from a textual spec:
//   const:<v>                              constant rate v
//   jump:<v1>:<v2>[:<x_jump>]              v1 on [0, x_jump), v2 beyond (x_jump defaults to 2)
//   gauss-bump:<base>:<amp>:<center>:<width>   base + amp * exp(-((x - center) / width)^2)
//   file:<path>                            CSV samples, linear interpolation, clamped ends
struct DivisionRate {
    std::string spec;
    std::function<double(double)> eval;

    GridFunction sample(const Grid& g) const;
};

DivisionRate parse_rate(const std::string& spec);

} // namespace celldiv
