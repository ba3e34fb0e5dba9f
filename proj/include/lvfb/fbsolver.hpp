#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "lvfb/model.hpp"

namespace lvfb {

/// Discretization of one run.  u lives on rho_j = j/m_u in [0, 1] (physical
/// r = rho h(t)); v lives on r_i = i L_v / m_v.
struct GridSpec {
  int m_u = 256;
  int m_v = 1000;
  double L_v = 100.0;
  double dt = 0.005;
  double t_end = 50.0;
  int output_stride = 20;

  /// Rejects m < 16, dt <= 0 or dt > 0.1/max(a1, a2), L_v <= 4 h0, t_end <= 0.
  void validate(const ModelParams& p) const;
};

struct SolverState {
  double t = 0.0;
  double h = 0.0;
  double h_prev = 0.0;
  double L_v = 0.0;
  std::vector<double> u;  ///< u(t, rho_j h), u.back() == 0
  std::vector<double> v;  ///< v(t, r_i)

  int m_u() const { return static_cast<int>(u.size()) - 1; }
  int m_v() const { return static_cast<int>(v.size()) - 1; }
  /// Physical-coordinate evaluation by linear interpolation; u is zero for r >= h.
  double u_at(double r) const;
  double v_at(double r) const;
  double sup_u() const;
  double sup_v() const;
};

SolverState make_initial_state(const ModelParams& p, const InitialData& init, const GridSpec& g);

struct TrajectoryRecord {
  double t;
  double h;
  double h_prime;
  double sup_u;
  double sup_v;
  double mass_u;             ///< int_0^h r^{N-1} u dr
  double reaction_integral;  ///< int_0^t int_0^h r^{N-1} u(a1 - b1 u - c1 v) dr ds
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
};

/// CSV with header `t,h,h_prime,sup_u,sup_v,mass_u`.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Coefficients of the u-equation after r = rho h(t):
///   w_t = diffusion (w_rr + (N-1)/rho w_rho) + drift_rate rho w_rho + reaction.
struct MovingFrameCoefficients {
  double diffusion;   ///< d1 / h^2
  double drift_rate;  ///< h'/h
  int dim;
  double advection_at(double rho) const { return drift_rate * rho; }
};

MovingFrameCoefficients transform_equation_coefficients(double d1, double h, double h_prime,
                                                        int dim);

struct StencilRow {
  double lower;
  double diag;
  double upper;
};

/// Central discretization of u'' + (N-1)/x u' at x_j = j dx.  Row 0 uses the
/// symmetric limit N u''(0) with the reflected ghost value u_{-1} = u_1.
StencilRow radial_laplacian_row(int j, int dim, double dx);

/// Running extrema of quantities bounded a priori by the comparison principle.
struct InvariantAudit {
  double bound_u = 0.0;  ///< max(a1/b1, sup u0)(1 + 1e-6)
  double bound_v = 0.0;  ///< max(a2/c2, sup v0)(1 + 1e-6)
  double max_sup_u = 0.0;
  double max_sup_v = 0.0;
  double min_u = 0.0;
  double min_v = 0.0;
  double min_dh = 0.0;
  long steps_checked = 0;

  int violations() const;
  void observe(const SolverState& s, double dh);
};

/// Advances state by one IMEX step.  Throws FrontRetreat, DomainExhausted or
/// BoundBreach when the step breaks a solver invariant.
SolverState step(const SolverState& state, const ModelParams& p, const GridSpec& g);

enum class Termination { Completed, Stopped, DomainExhausted };

struct Snapshot {
  double requested_t;
  SolverState state;
};

struct SimulateOptions {
  /// Called on every recorded row; returning true ends the run early.
  std::function<bool(const TrajectoryRecord&)> stop;
  /// When set, h > 0.9 L_v ends the run normally instead of throwing.
  bool tolerate_domain_exhaustion = false;
  std::vector<double> snapshot_times;
};

struct SimulationResult {
  Trajectory trajectory;
  SolverState final_state;
  InvariantAudit audit;
  Termination termination = Termination::Completed;
  std::vector<Snapshot> snapshots;
};

SimulationResult simulate(const ModelParams& p, const InitialData& init, const GridSpec& g,
                          const SimulateOptions& opts = {});

struct MassBalanceSample {
  double t;         ///< interval midpoint
  double residual;  ///< mass/time
};

/// Residual of d/dt int r^{N-1} u + (d1/mu) h^{N-1} h' - int r^{N-1} u(a1-b1u-c1v)
/// over each pair of consecutive records.  Requires mu > 0.
std::vector<MassBalanceSample> mass_balance_residual(const Trajectory& traj,
                                                     const ModelParams& p);

}  // namespace lvfb
