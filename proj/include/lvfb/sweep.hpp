#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lvfb/analysis.hpp"
#include "lvfb/scenario.hpp"

namespace lvfb {

/// Verdict of one scenario run to its horizon.  Runs that outgrow the v
/// domain stop there instead of failing.
struct PointOutcome {
  SimulationResult run;
  ClassificationResult classification;
  std::optional<SpeedEstimate> speed;  ///< only for Spreading with enough records
};

PointOutcome run_and_classify(const Scenario& s);

struct SweepPoint {
  double param1 = 0.0;
  std::optional<double> param2;
  std::string verdict;  ///< Spreading/Vanishing/Undetermined or an error code name
  std::optional<double> h_final;
  std::optional<double> c_hat;
  std::string error;    ///< full message when verdict is an error code
};

struct SweepResult {
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<SweepPoint> points;  ///< axis1 outer, axis2 inner
};

/// Runs every grid point of s.sweep1 x s.sweep2 on up to `workers` threads.
/// Errors at a point land in its row; the order never depends on timing.
SweepResult run_sweep(const Scenario& s, int workers);

/// `param1,param2,verdict,h_final,c_hat`
void write_phase_csv(std::ostream& os, const SweepResult& r);

/// Gnuplot `matrix nonuniform` text: 1 Spreading, 0 Vanishing,
/// 0.5 Undetermined, NaN on error.
void write_phase_matrix(std::ostream& os, const SweepResult& r);

}  // namespace lvfb
