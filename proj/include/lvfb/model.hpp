#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace lvfb {

/// Coefficients of the two-species competition system with a free boundary.
///
/// u (the invader) lives on the ball r < h(t) and v (the native species) on
/// all of space.  The interspecific rates c1 and b2 may be zero, which
/// decouples the invader from the native species and recovers the scalar
/// logistic free-boundary problem.  mu = 0 freezes the front.
struct ModelParams {
  double d1 = 1.0;
  double d2 = 1.0;
  double a1 = 3.0;
  double a2 = 1.0;
  double b1 = 1.0;
  double b2 = 1.0;
  double c1 = 1.0;
  double c2 = 1.0;
  double mu = 1.0;
  double h0 = 0.8;
  int dim = 1;

  /// Throws Error(InvalidArgument) naming the first offending field.
  void validate() const;

  double u_capacity() const { return a1 / b1; }
  double v_capacity() const { return a2 / c2; }
  /// Invader growth rate when the native species sits at its capacity.
  double effective_invader_rate() const { return a1 - a2 * c1 / c2; }
};

enum class Regime { SuperiorU, InferiorU, WeakCompetition, StrongCompetition };

std::string_view to_string(Regime r);

/// Classifies the homogeneous competition outcome from the ratios a1/a2,
/// b1/b2 and c1/c2.  a1/a2 tying with either other ratio (within 1e-12
/// relative) raises BoundaryRegime.
Regime classify_regime(const ModelParams& p);

using DensityPair = std::pair<double, double>;

struct SteadyStates {
  DensityPair r0{0.0, 0.0};
  DensityPair r1;
  DensityPair r2;
  std::optional<DensityPair> coexistence;
};

/// Constant steady states.  Throws DegenerateDeterminant when b1*c2 == b2*c1.
SteadyStates steady_states(const ModelParams& p);

/// Exact solution of u' = u(a - b u), u(0) = u_init.
double logistic_ode(double a, double b, double u_init, double t);

struct OdeSample {
  double t;
  double z;
  double w;
};

/// Spatially homogeneous competition system z' = z(a1 - b1 z - c1 w),
/// w' = w(a2 - b2 z - c2 w) by classical RK4 with fixed dt.  The run is
/// repeated with dt/2; endpoints differing by 1e-6 or more raise
/// StepSizeTooLarge.
std::vector<OdeSample> lv_ode(const ModelParams& p, double z0, double w0, double t_end,
                              double dt);

using RadialProfile = std::function<double(double)>;

/// Initial densities.  u0 is defined on [0, h0], v0 on [0, inf).
struct InitialData {
  RadialProfile u0;
  RadialProfile v0;
  bool v0_positive_infimum = false;
  bool v0_at_capacity_far_field = false;

  /// Checks u0'(0) = 0, u0(h0) = 0, u0 > 0 on [0, h0) and v0 >= 0 by sampling
  /// up to r_max, then fills in the v0 metadata.
  void validate(const ModelParams& p, double r_max);
};

/// u0(r) = amplitude * (1 - (r/h0)^2) and v0 == v_level.
InitialData parabolic_initial_data(const ModelParams& p, double amplitude, double v_level);

/// The default admissible data: amplitude a1/(2 b1), v0 == a2/c2.
InitialData default_initial_data(const ModelParams& p);

}  // namespace lvfb
