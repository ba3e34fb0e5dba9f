#include "lvfb/tridiag.hpp"

#include <cmath>
#include <string>

#include "lvfb/error.hpp"

namespace lvfb {

void tridiag_solve_into(std::span<const double> lower, std::span<const double> diag,
                        std::span<const double> upper, std::span<const double> rhs,
                        std::span<double> x, std::vector<double>& scratch) {
  const std::size_t n = diag.size();
  if (lower.size() != n || upper.size() != n || rhs.size() != n || x.size() != n || n == 0) {
    throw Error(ErrorCode::InvalidArgument, "tridiagonal bands must share a non-zero length");
  }
  bool strict = false;
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
    const double dd = std::abs(diag[i]);
    if (dd < off * (1.0 - 1e-14)) {
      throw Error(ErrorCode::NotDiagonallyDominant, "row " + std::to_string(i));
    }
    if (dd > off) strict = true;
  }
  if (!strict) throw Error(ErrorCode::NotDiagonallyDominant, "no strictly dominant row");

  scratch.resize(n);
  double denom = diag[0];
  scratch[0] = n > 1 ? upper[0] / denom : 0.0;
  x[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = diag[i] - lower[i] * scratch[i - 1];
    scratch[i] = i + 1 < n ? upper[i] / denom : 0.0;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

std::vector<double> tridiag_solve(std::span<const double> lower, std::span<const double> diag,
                                  std::span<const double> upper, std::span<const double> rhs) {
  std::vector<double> x(diag.size());
  std::vector<double> scratch;
  tridiag_solve_into(lower, diag, upper, rhs, x, scratch);
  return x;
}

}  // namespace lvfb
