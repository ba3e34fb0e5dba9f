#pragma once

#include <vector>

#include "lvfb/fbsolver.hpp"
#include "lvfb/model.hpp"

namespace lvfb {

/// Fully explicit reference scheme in the physical coordinate with the front
/// tracked between grid nodes.  Short horizons only.
struct ExplicitOracleConfig {
  double dr = 0.01;
  double dt = 0.0;        ///< 0 selects 0.2 dr^2 / max(d1, d2)
  double horizon = 2.0;
  double length = 10.0;   ///< v domain [0, length], homogeneous Neumann at the end
  int output_stride = 100;

  /// Fills in the default dt and enforces dt <= 0.2 dr^2 / max(d1, d2).
  ExplicitOracleConfig resolved(const ModelParams& p) const;
};

struct OracleResult {
  Trajectory trajectory;
  double h = 0.0;
  double dr = 0.0;
  std::vector<double> u;  ///< u(T, i dr), zero at and beyond the front
  std::vector<double> v;  ///< v(T, i dr)

  double u_at(double r) const;
};

/// Throws Instability when the explicit scheme blows up.
OracleResult explicit_reference(const ModelParams& p, const InitialData& init,
                                const ExplicitOracleConfig& cfg);

}  // namespace lvfb
