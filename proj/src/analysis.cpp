#include "lvfb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lvfb/eigen.hpp"
#include "lvfb/error.hpp"
#include "lvfb/semiwave.hpp"

namespace lvfb {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Spreading: return "Spreading";
    case Verdict::Vanishing: return "Vanishing";
    case Verdict::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

namespace {

void require_regime(const ModelParams& p, Regime wanted) {
  const Regime r = classify_regime(p);
  if (r != wanted) {
    throw Error(ErrorCode::WrongRegime, "expected " + std::string(to_string(wanted)) + ", got " +
                                            std::string(to_string(r)));
  }
}

// Records with t >= (1 - fraction) * t_last.
std::vector<TrajectoryRecord> trailing(const Trajectory& traj, double fraction) {
  const double t_last = traj.records.back().t;
  std::vector<TrajectoryRecord> out;
  for (const auto& r : traj.records) {
    if (r.t >= (1.0 - fraction) * t_last) out.push_back(r);
  }
  return out;
}

}  // namespace

ClassificationResult classify(const Trajectory& traj, const ModelParams& p,
                              const ClassificationTolerances& tol) {
  require_regime(p, Regime::SuperiorU);
  if (traj.records.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
  ClassificationResult res;
  res.vanishing_bound = vanishing_bound(p);
  const auto& last = traj.records.back();
  res.h_final = last.h;
  res.sup_u_final = last.sup_u;
  res.horizon = last.t;

  if (p.h0 >= res.vanishing_bound) {
    res.verdict = Verdict::Spreading;
    res.criterion = "h0 >= vanishing bound";
    return res;
  }
  const double spread_at = tol.spreading_margin * res.vanishing_bound;
  for (const auto& r : traj.records) {
    if (r.h > spread_at) {
      res.verdict = Verdict::Spreading;
      std::ostringstream os;
      os << "h exceeded " << tol.spreading_margin << " x vanishing bound at t=" << r.t;
      res.criterion = os.str();
      return res;
    }
  }

  const double u_tol = tol.u_rel * p.u_capacity();
  const double hp_tol = tol.h_prime_rel * std::sqrt(p.a1 * p.d1);
  const auto window = trailing(traj, tol.window_fraction);
  const bool quiet = last.t > 0.0 && window.size() >= 2 &&
                     std::all_of(window.begin(), window.end(), [&](const TrajectoryRecord& r) {
                       return r.sup_u < u_tol && r.h_prime < hp_tol;
                     });
  if (quiet) {
    res.verdict = Verdict::Vanishing;
    res.criterion = "sup u and h' below tolerance over the trailing window";
  } else {
    res.verdict = Verdict::Undetermined;
    res.criterion = "neither criterion fired";
  }
  return res;
}

std::function<bool(const TrajectoryRecord&)> stop_when_spreading(
    const ModelParams& p, const ClassificationTolerances& tol) {
  const double threshold = tol.spreading_margin * vanishing_bound(p);
  return [threshold](const TrajectoryRecord& r) { return r.h > threshold; };
}

ThresholdProbe probe_mu(const ModelParams& p, const InitialData& init, const GridSpec& g,
                        double mu, double cap_factor, const ClassificationTolerances& tol) {
  ModelParams q = p;
  q.mu = mu;
  GridSpec grid = g;
  const double cap = cap_factor * g.t_end;
  SimulateOptions opts;
  opts.stop = stop_when_spreading(q, tol);
  opts.tolerate_domain_exhaustion = true;
  while (true) {
    const SimulationResult run = simulate(q, init, grid, opts);
    const ClassificationResult c = classify(run.trajectory, q, tol);
    if (c.verdict != Verdict::Undetermined) return {mu, c.verdict, grid.t_end};
    if (grid.t_end * 2.0 > cap * (1.0 + 1e-12)) {
      throw Error(ErrorCode::HorizonExhausted,
                  "mu=" + std::to_string(mu) + " undetermined at horizon " +
                      std::to_string(grid.t_end));
    }
    grid.t_end *= 2.0;
  }
}

ThresholdResult find_mu_star(const ModelParams& p, const InitialData& init, double mu_lo,
                             double mu_hi, const GridSpec& g, const ThresholdOptions& opts) {
  require_regime(p, Regime::SuperiorU);
  ThresholdResult res;
  if (p.h0 >= vanishing_bound(p)) {
    res.trivially_zero = true;
    return res;
  }
  if (!(mu_lo > 0.0) || !(mu_hi > mu_lo)) {
    throw Error(ErrorCode::BracketInvalid, "bracket needs 0 < mu_lo < mu_hi");
  }
  GridSpec grid = g;
  const double cap_factor = opts.horizon_cap_factor;
  auto probe = [&](double mu) {
    // Horizon growth carries over: later probes start at the longest horizon
    // any earlier probe needed.
    const double remaining = cap_factor * g.t_end / grid.t_end;
    ThresholdProbe pr = probe_mu(p, init, grid, mu, remaining, opts.tolerances);
    grid.t_end = pr.horizon;
    res.history.push_back(pr);
    return pr.verdict;
  };

  const Verdict v_lo = probe(mu_lo);
  const Verdict v_hi = probe(mu_hi);
  if (v_lo != Verdict::Vanishing || v_hi != Verdict::Spreading) {
    throw Error(ErrorCode::BracketInvalid,
                "mu_lo=" + std::to_string(mu_lo) + " -> " + std::string(to_string(v_lo)) +
                    ", mu_hi=" + std::to_string(mu_hi) + " -> " + std::string(to_string(v_hi)));
  }
  double lo = mu_lo;
  double hi = mu_hi;
  for (int it = 0; it < opts.max_iterations && hi - lo > opts.rel_tol * 0.5 * (lo + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (probe(mid) == Verdict::Spreading) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  res.lo = lo;
  res.hi = hi;
  res.width = hi - lo;
  res.mu_star = 0.5 * (lo + hi);
  return res;
}

SpeedEstimate estimate_speed(const Trajectory& traj, const ModelParams& p, double theta) {
  const ClassificationResult c = classify(traj, p);
  if (c.verdict != Verdict::Spreading) {
    throw Error(ErrorCode::NotSpreading, "speed estimate needs a spreading run (" +
                                             std::string(to_string(c.verdict)) + ")");
  }
  const auto window = trailing(traj, 0.5);
  if (window.size() < 20) {
    throw Error(ErrorCode::InvalidArgument, "speed fit needs >= 20 trailing records");
  }
  double st = 0.0, sh = 0.0;
  for (const auto& r : window) {
    st += r.t;
    sh += r.h;
  }
  const double n = static_cast<double>(window.size());
  const double tm = st / n;
  const double hm = sh / n;
  double stt = 0.0, sth = 0.0;
  for (const auto& r : window) {
    stt += (r.t - tm) * (r.t - tm);
    sth += (r.t - tm) * (r.h - hm);
  }
  SpeedEstimate est;
  est.theta = theta;
  est.points = static_cast<int>(window.size());
  est.c_hat = sth / stt;
  double ss = 0.0;
  for (const auto& r : window) {
    const double e = r.h - (hm + est.c_hat * (r.t - tm));
    ss += e * e;
  }
  est.residual = std::sqrt(ss / n);
  est.upper = find_k0(p.mu, p.a1, p.b1, p.d1);
  est.lower = p.c1 == 0.0 ? est.upper : find_k0(p.mu, p.effective_invader_rate(), p.b1, p.d1);
  est.within_bounds =
      est.lower * (1.0 - theta) <= est.c_hat && est.c_hat <= est.upper * (1.0 + theta);
  return est;
}

InferiorReport inferior_longtime_check(const Trajectory& traj, const SolverState& final_state,
                                       const ModelParams& p,
                                       const ClassificationTolerances& tol) {
  require_regime(p, Regime::InferiorU);
  if (traj.records.empty()) throw Error(ErrorCode::InvalidArgument, "empty trajectory");
  InferiorReport rep;
  rep.sup_u_final = final_state.sup_u();
  const double cap_v = p.v_capacity();
  const int half = final_state.m_v() / 2;
  for (int i = 0; i <= half; ++i) {
    rep.v_deviation = std::max(rep.v_deviation, std::abs(final_state.v[i] - cap_v));
  }
  const auto window = trailing(traj, tol.window_fraction);
  for (const auto& r : window) rep.h_prime_trailing = std::max(rep.h_prime_trailing, r.h_prime);
  const double hp_tol = tol.h_prime_rel * std::sqrt(p.a1 * p.d1);
  rep.plateaued = window.size() >= 2 && rep.h_prime_trailing < hp_tol;

  const bool u_gone = rep.sup_u_final < tol.u_rel * p.u_capacity();
  const bool v_settled = rep.v_deviation < 0.02 * cap_v;
  rep.passed = u_gone && v_settled && rep.plateaued;
  std::ostringstream os;
  os << (u_gone ? "u extinct" : "u not extinct") << "; "
     << (v_settled ? "v at capacity" : "v away from capacity") << "; "
     << (rep.plateaued ? "front plateaued" : "not plateaued");
  rep.diagnostics = os.str();
  return rep;
}

}  // namespace lvfb
