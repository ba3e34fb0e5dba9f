#pragma once

#include <span>
#include <vector>

namespace lvfb {

/// Thomas algorithm for lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored.  Rows must be (weakly) diagonally
/// dominant with at least one strictly dominant row; otherwise throws
/// NotDiagonallyDominant.
std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs);

/// In-place variant reusing caller-owned scratch; x receives the solution.
void tridiag_solve_into(std::span<const double> lower, std::span<const double> diag,
                        std::span<const double> upper, std::span<const double> rhs,
                        std::span<double> x, std::vector<double>& scratch);

}  // namespace lvfb
