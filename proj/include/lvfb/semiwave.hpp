#pragma once

#include <vector>

namespace lvfb {

/// Monotone solution of -d U'' + k U' = a U - b U^2 on (0, inf) with U(0) = 0
/// and U(inf) = a/b, sampled on [0, extent()].
struct SemiWaveProfile {
  double k = 0.0;
  double a = 0.0;
  double b = 0.0;
  double d = 0.0;
  double slope0 = 0.0;      ///< U'(0)
  std::vector<double> grid;   ///< increasing, grid.front() == 0
  std::vector<double> values; ///< U at grid points
  std::vector<double> slopes; ///< U' at grid points

  double extent() const { return grid.empty() ? 0.0 : grid.back(); }

  /// Cubic Hermite interpolation, clamped to the end values outside the grid.
  double value_at(double r) const;
};

/// Integrates backward in r along the stable manifold of the saddle (a/b, 0)
/// of the phase plane (U, U') until U reaches zero.  Requires 0 <= k < 2 sqrt(ad);
/// larger k raises NotInSpeedRange.
SemiWaveProfile solve_semiwave(double a, double b, double d, double k);

/// U_k'(0) without storing the profile.
double semiwave_slope(double a, double b, double d, double k);

/// The unique k0 in (0, 2 sqrt(ad)) with mu U_{k0}'(0) = k0, by bisection to
/// 1e-8 sqrt(ad).  Throws BracketFailure if the sign change is missing.
double find_k0(double mu, double a, double b, double d);

}  // namespace lvfb
