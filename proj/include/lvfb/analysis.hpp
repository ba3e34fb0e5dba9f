#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lvfb/fbsolver.hpp"
#include "lvfb/model.hpp"

namespace lvfb {

enum class Verdict { Spreading, Vanishing, Undetermined };

std::string_view to_string(Verdict v);

struct ClassificationTolerances {
  double spreading_margin = 1.05;  ///< Spreading once h > margin * vanishing_bound
  double u_rel = 1e-3;             ///< Vanishing needs sup u < u_rel * a1/b1 ...
  double h_prime_rel = 1e-5;       ///< ... and h' < h_prime_rel * sqrt(a1 d1) ...
  double window_fraction = 0.1;    ///< ... on every record of the trailing window
};

struct ClassificationResult {
  Verdict verdict = Verdict::Undetermined;
  double h_final = 0.0;
  double sup_u_final = 0.0;
  double vanishing_bound = 0.0;
  double horizon = 0.0;  ///< time of the last record
  std::string criterion;
};

/// Spreading/vanishing verdict for a superior invader.  Throws WrongRegime
/// unless classify_regime(p) is SuperiorU.
ClassificationResult classify(const Trajectory& traj, const ModelParams& p,
                              const ClassificationTolerances& tol = {});

/// Stop predicate for simulate(): true once the spreading criterion fires.
std::function<bool(const TrajectoryRecord&)> stop_when_spreading(
    const ModelParams& p, const ClassificationTolerances& tol = {});

struct ThresholdOptions {
  double rel_tol = 0.01;           ///< final bracket width <= rel_tol * midpoint
  double horizon_cap_factor = 8.0; ///< horizon may double up to this multiple
  int max_iterations = 80;
  ClassificationTolerances tolerances;
};

struct ThresholdProbe {
  double mu;
  Verdict verdict;
  double horizon;
};

struct ThresholdResult {
  double mu_star = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  bool trivially_zero = false;  ///< h0 already at or past vanishing_bound
  std::vector<ThresholdProbe> history;
};

/// Classifies one run at Stefan coefficient mu, doubling the horizon on
/// Undetermined up to cap_factor * g.t_end.  Throws HorizonExhausted.
ThresholdProbe probe_mu(const ModelParams& p, const InitialData& init, const GridSpec& g,
                        double mu, double cap_factor, const ClassificationTolerances& tol = {});

/// Bisection for the sharp threshold mu*: mu_lo must vanish and mu_hi spread
/// (BracketInvalid otherwise).  Relies on h being monotone in mu.
ThresholdResult find_mu_star(const ModelParams& p, const InitialData& init, double mu_lo,
                             double mu_hi, const GridSpec& g, const ThresholdOptions& opts = {});

struct SpeedEstimate {
  double c_hat = 0.0;
  double lower = 0.0;  ///< k0(mu, a1 - a2 c1/c2, b1, d1)
  double upper = 0.0;  ///< k0(mu, a1, b1, d1)
  double residual = 0.0;  ///< RMS deviation of the linear fit
  double theta = 0.1;
  int points = 0;
  bool within_bounds = false;  ///< lower (1 - theta) <= c_hat <= upper (1 + theta)
};

/// Least-squares slope of h(t) over the trailing half of the records.
/// Throws NotSpreading unless the run classifies as Spreading.
SpeedEstimate estimate_speed(const Trajectory& traj, const ModelParams& p, double theta = 0.1);

struct InferiorReport {
  bool passed = false;
  double sup_u_final = 0.0;
  double v_deviation = 0.0;  ///< sup |v - a2/c2| on [0, L_v/2]
  double h_prime_trailing = 0.0;
  bool plateaued = false;
  std::string diagnostics;
};

/// Extinction check for an inferior invader.  Throws WrongRegime unless
/// classify_regime(p) is InferiorU.
InferiorReport inferior_longtime_check(const Trajectory& traj, const SolverState& final_state,
                                       const ModelParams& p,
                                       const ClassificationTolerances& tol = {});

}  // namespace lvfb
