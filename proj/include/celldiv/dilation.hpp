#pragma once

#include <functional>

#include "celldiv/grid.hpp"

namespace celldiv {

enum class DilationStrategy { from_zero, from_infinity, dense_oracle };

struct DilationSolution {
    GridFunction h;
    DilationStrategy strategy = DilationStrategy::from_zero;
    double residual_norm = 0.0;  // Euclidean residual of the defining recurrence
    bool l0_coerced = false;     // input had L_0 != 0, treated as 0
};

// Strategy propagating from the origin: increasing-i recursion
//   4 H_i = H_{i/2} + L_{i/2}   (half indices by the even/odd averaging rule)
// with H_0 = 0 and the i = 1 row, which references H_1 itself, solved in
// closed form (H_1 = L_1 / 7 for L_0 = 0).
DilationSolution solve_from_zero(const GridFunction& l);

// Strategy propagating from the far end: decreasing-i recursion
//   H_i = 2 H_{2i} + H_{2i+1} + H_{2i-1} - L_i,  i = I..2,
// with zero extension beyond the last node, then H_1 = 4 H_2 - L_1, H_0 = 0.
DilationSolution solve_from_infinity(const GridFunction& l);

// The strategy-1 equations assembled as a dense linear system (strictly
// diagonally dominant) and solved by partial-pivot LU; reference
// implementation for equivalence tests.
DilationSolution solve_dense_oracle(const GridFunction& l);

// Series solutions of 4 H(2x) - H(x) = L(x) for a callable L:
// the branch vanishing at the origin, sum_{n>=1} 4^{-n} L(2^{-n} x).
double series_h1(const std::function<double(double)>& l, double x, double tol = 1e-12);

// The branch vanishing at infinity, -sum_{n>=0} 4^n L(2^n x); requires L to
// decay fast enough and reports divergence when the terms keep growing.
double series_h2(const std::function<double(double)>& l, double x, double tol = 1e-12);

// Homogeneous solution representative f(log x) / x^2 for log(2)-periodic f;
// every such function satisfies 4 K(2x) = K(x) exactly.
double kernel_witness(const std::function<double(double)>& f_periodic, double x);

} // namespace celldiv
