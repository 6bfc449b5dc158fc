#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace celldiv {

// Thrown when an iterative solve fails to converge or a series diverges.
// Carries the last residual (or increment) observed and the iteration count.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double residual = 0.0, std::size_t iterations = 0)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

    double residual() const { return residual_; }
    std::size_t iterations() const { return iterations_; }

  private:
    double residual_;
    std::size_t iterations_;
};

} // namespace celldiv
