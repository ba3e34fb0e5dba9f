// Acceptance suite.  Usage: lvfb_acceptance [criterion ...]   (default: all)
// Prints one PASS/FAIL line per criterion and exits nonzero if any failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lvfb/analysis.hpp"
#include "lvfb/eigen.hpp"
#include "lvfb/error.hpp"
#include "lvfb/fbsolver.hpp"
#include "lvfb/oracle.hpp"
#include "lvfb/scenario.hpp"
#include "lvfb/semiwave.hpp"

using namespace lvfb;

namespace {

// Tolerances.
constexpr double kCriticalTol = 1e-10;
constexpr double kK0LargeLo = 1.8;
constexpr double kK0LargeHi = 2.0;
constexpr double kK0SmallRel = 0.05;
constexpr double kHamiltonianTol = 1e-6;
constexpr double kScalarVanishSlack = 1.02;
constexpr double kSpeedRel = 0.10;
constexpr double kVanishBoundSlack = 1.05;
constexpr double kVRel = 0.02;
constexpr double kURel = 0.05;
constexpr double kInferiorURel = 1e-3;
constexpr double kInferiorHPrime = 1e-5;
constexpr double kOrderCells = 2.0;
constexpr double kMassShrink = 2.0;
constexpr double kOracleHRel = 0.02;
constexpr double kOracleURel = 0.02;
constexpr double kThresholdRel = 0.01;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!detail.str().empty()) detail << "; ";
    detail << what << (cond ? "" : " [FAILED]");
    ok = ok && cond;
  }
};

std::string fmt(double x, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

// Every simulate() call made by the suite, for the invariant audit.
struct AuditEntry {
  std::string label;
  InvariantAudit audit;
};
std::vector<AuditEntry> g_audits;

SimulationResult run(const std::string& label, const ModelParams& p, const InitialData& init,
                     const GridSpec& g, const SimulateOptions& opts = {}) {
  SimulationResult r = simulate(p, init, g, opts);
  g_audits.push_back({label, r.audit});
  return r;
}

SimulationResult run(const std::string& label, const Scenario& s,
                     const SimulateOptions& opts = {}) {
  return run(label, s.params, s.initial_data(), s.grid, opts);
}

double sup_v_deviation(const SolverState& s, double r_max, double target) {
  double dev = 0.0;
  for (int i = 0; i <= s.m_v(); ++i) {
    const double r = s.L_v * i / s.m_v();
    if (r <= r_max) dev = std::max(dev, std::abs(s.v[i] - target));
  }
  return dev;
}

// --- criteria ---------------------------------------------------------------

void c01(Check& c) {
  const double r = critical_radius(1, 1, 1);
  const double err = std::abs(r - std::numbers::pi / 2);
  c.require(err <= kCriticalTol, "|R* - pi/2| = " + fmt(err, 3));
}

void c02(Check& c) {
  const double large = find_k0(1e3, 1, 1, 1);
  c.require(large >= kK0LargeLo && large < kK0LargeHi,
            "k0/sqrt(ad) at a mu/(bd)=1e3: " + fmt(large, 8) + " in [1.8, 2.0)");
  const double small = find_k0(1e-3, 1, 1, 1) * 1e3;
  const double rel = std::abs(small * std::sqrt(3.0) - 1.0);
  c.require(rel <= kK0SmallRel,
            "scaled k0 at a mu/(bd)=1e-3: " + fmt(small, 8) + " vs 1/sqrt3 (rel " + fmt(rel, 3) +
                ")");
}

void c03(Check& c) {
  const double s = semiwave_slope(1, 1, 1, 0);
  const double err = std::abs(s - std::sqrt(1.0 / 3.0));
  c.require(err <= kHamiltonianTol, "slope0(k=0) = " + fmt(s, 12) + ", err " + fmt(err, 3));
}

Scenario scalar_scenario(double mu) {
  Scenario s = builtin_scenario("scalar-logistic");
  s.params.mu = mu;
  s.grid.m_u = 256;
  s.grid.t_end = 50.0;
  return s;
}

void c04(Check& c) {
  const double pi_half = std::numbers::pi / 2;
  const Scenario small = scalar_scenario(0.01);
  const auto rs = run("scalar mu=0.01", small);
  const auto cs = classify(rs.trajectory, small.params);
  c.require(cs.verdict == Verdict::Vanishing && cs.h_final <= pi_half * kScalarVanishSlack,
            "mu=0.01: " + std::string(to_string(cs.verdict)) + ", h_final " + fmt(cs.h_final) +
                " <= " + fmt(pi_half * kScalarVanishSlack));
  const Scenario large = scalar_scenario(10.0);
  const auto rl = run("scalar mu=10", large);
  const auto cl = classify(rl.trajectory, large.params);
  c.require(cl.verdict == Verdict::Spreading,
            "mu=10: " + std::string(to_string(cl.verdict)) + ", h_final " + fmt(cl.h_final));
}

void c05(Check& c) {
  const Scenario s = scalar_scenario(10.0);
  const auto r = run("scalar mu=10 (speed)", s);
  const SpeedEstimate e = estimate_speed(r.trajectory, s.params);
  const double k0 = find_k0(10.0, 1, 1, 1);
  const double rel = std::abs(e.c_hat - k0) / k0;
  c.require(rel <= kSpeedRel, "c_hat " + fmt(e.c_hat) + " vs k0 " + fmt(k0) + " (rel " +
                                  fmt(rel, 3) + ")");
}

void c06(Check& c) {
  Scenario s = builtin_scenario("superior-baseline");
  const double vb = vanishing_bound(s.params);

  s.params.mu = 0.05;
  const auto rs = run("superior mu=0.05", s);
  const auto cs = classify(rs.trajectory, s.params);
  const double vdev = sup_v_deviation(rs.final_state, 2.0 * vb, s.params.v_capacity());
  c.require(cs.verdict == Verdict::Vanishing && cs.h_final <= vb * kVanishBoundSlack,
            "mu=0.05: " + std::string(to_string(cs.verdict)) + ", h_final " + fmt(cs.h_final) +
                " <= " + fmt(vb * kVanishBoundSlack));
  c.require(vdev < kVRel * s.params.v_capacity(),
            "sup|v - a2/c2| on [0, 2 bound] = " + fmt(vdev, 3));

  s.params.mu = 10.0;
  const auto rl = run("superior mu=10", s);
  const auto cl = classify(rl.trajectory, s.params);
  double udev = 0.0;
  for (int j = 0; j <= 400; ++j) {
    const double r = s.params.h0 * j / 400.0;
    udev = std::max(udev, std::abs(rl.final_state.u_at(r) - s.params.u_capacity()));
  }
  c.require(cl.verdict == Verdict::Spreading, "mu=10: " + std::string(to_string(cl.verdict)));
  c.require(udev < kURel * s.params.u_capacity(), "sup|u - a1/b1| on [0, h0] = " + fmt(udev, 3));
  const SpeedEstimate e = estimate_speed(rl.trajectory, s.params, kSpeedRel);
  c.require(e.within_bounds, "c_hat " + fmt(e.c_hat) + " in [" + fmt(e.lower) + ", " +
                                 fmt(e.upper) + "] +-10%");
}

void c07(Check& c) {
  const Scenario s = builtin_scenario("inferior-baseline");
  const auto r = run("inferior baseline", s);
  const auto rep = inferior_longtime_check(r.trajectory, r.final_state, s.params);
  const double sup_u = r.final_state.sup_u();
  const double hp = rep.h_prime_trailing;
  const double vdev = sup_v_deviation(r.final_state, 0.5 * r.final_state.L_v, s.params.v_capacity());
  c.require(sup_u < kInferiorURel * s.params.u_capacity(), "sup u " + fmt(sup_u, 3));
  c.require(hp < kInferiorHPrime, "trailing h' " + fmt(hp, 3));
  c.require(vdev < kVRel * s.params.v_capacity(), "sup|v - a2/c2| on [0, L_v/2] " + fmt(vdev, 3));
  c.require(rep.passed, "check: " + rep.diagnostics);
}

void c08(Check& c) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
  int scenarios = 0;
  double worst = -1e300;  // max over records of (h_lower - h_upper) / cell
  while (scenarios < 3) {
    ModelParams p;
    p.a1 = in(2.0, 4.0);
    p.a2 = in(0.5, 1.5);
    p.b1 = in(0.5, 1.5);
    p.b2 = in(0.5, 1.5);
    p.c1 = in(0.5, 1.5);
    p.c2 = in(0.5, 1.5);
    p.d1 = in(0.5, 1.5);
    p.d2 = in(0.5, 1.5);
    p.h0 = in(0.5, 1.2);
    const double mu_base = in(0.3, 3.0);
    try {
      if (classify_regime(p) != Regime::SuperiorU) continue;
    } catch (const Error&) {
      continue;
    }
    ++scenarios;
    const GridSpec g{128, 400, 40.0, 0.005, 10.0, 10};
    SimulateOptions opts;
    opts.tolerate_domain_exhaustion = true;
    std::vector<Trajectory> runs;
    for (double f : {0.5, 1.0, 2.0}) {
      p.mu = f * mu_base;
      runs.push_back(run("mu-order #" + std::to_string(scenarios) + " x" + fmt(f), p,
                         default_initial_data(p), g, opts)
                         .trajectory);
    }
    for (int pair = 0; pair < 2; ++pair) {
      const auto& lo = runs[pair].records;
      const auto& hi = runs[pair + 1].records;
      const std::size_t n = std::min(lo.size(), hi.size());
      for (std::size_t k = 0; k < n; ++k) {
        const double cell = hi[k].h / g.m_u;
        worst = std::max(worst, (lo[k].h - hi[k].h) / cell);
      }
    }
  }
  c.require(worst <= kOrderCells,
            "3 scenarios x mu in {0.5,1,2} mu_base: max (h_lower - h_upper) = " + fmt(worst, 3) +
                " cells <= 2");
}

void c09(Check& c, bool standalone) {
  if (standalone) {
    // Run the simulation-backed criteria quietly to populate the audit log.
    Check scratch;
    c04(scratch);
    c05(scratch);
    c06(scratch);
    c07(scratch);
    c08(scratch);
  }
  int bad = 0;
  std::string first;
  for (const auto& e : g_audits) {
    if (e.audit.violations() > 0) {
      ++bad;
      if (first.empty()) first = e.label;
    }
  }
  c.require(!g_audits.empty() && bad == 0,
            std::to_string(g_audits.size()) + " runs audited, " + std::to_string(bad) +
                " with violations" + (first.empty() ? "" : " (first: " + first + ")"));
}

double max_abs_residual(const Trajectory& t, const ModelParams& p) {
  double worst = 0.0;
  for (const auto& s : mass_balance_residual(t, p)) worst = std::max(worst, std::abs(s.residual));
  return worst;
}

void c10(Check& c) {
  Scenario s = builtin_scenario("superior-baseline");
  s.grid.t_end = 5.0;
  s.grid.m_u = 128;
  s.grid.dt = 0.004;
  s.grid.output_stride = 25;
  const auto coarse = run("mass balance coarse", s);
  s.grid.m_u = 256;
  s.grid.dt = 0.001;
  s.grid.output_stride = 100;
  const auto fine = run("mass balance fine", s);
  const double rc = max_abs_residual(coarse.trajectory, s.params);
  const double rf = max_abs_residual(fine.trajectory, s.params);
  c.require(rc >= kMassShrink * rf, "max|residual| " + fmt(rc, 4) + " -> " + fmt(rf, 4) +
                                        " (ratio " + fmt(rc / rf, 4) + " >= 2)");
}

void c11(Check& c) {
  Scenario s = builtin_scenario("superior-baseline");
  s.grid.t_end = 2.0;
  s.grid.dt = 0.001;
  s.grid.output_stride = 100;
  const auto ff = run("oracle comparison", s);
  ExplicitOracleConfig cfg;
  cfg.dr = 0.005;
  cfg.horizon = 2.0;
  cfg.length = 10.0;
  cfg.output_stride = 10000;
  const OracleResult o = explicit_reference(s.params, s.initial_data(), cfg);
  const double h_ff = ff.final_state.h;
  const double h_rel = std::abs(h_ff - o.h) / o.h;
  double udiff = 0.0;
  double usup = 0.0;
  for (std::size_t i = 0; i < o.u.size(); ++i) {
    const double r = i * o.dr;
    if (r > std::max(h_ff, o.h)) break;
    udiff = std::max(udiff, std::abs(ff.final_state.u_at(r) - o.u_at(r)));
    usup = std::max(usup, o.u[i]);
  }
  c.require(h_rel <= kOracleHRel, "h " + fmt(h_ff) + " vs oracle " + fmt(o.h) + " (rel " +
                                      fmt(h_rel, 3) + ")");
  c.require(udiff <= kOracleURel * usup,
            "sup|u - u_oracle| = " + fmt(udiff, 3) + " vs 2% of " + fmt(usup, 4));
}

void c12(Check& c) {
  ModelParams p;  // superior baseline coefficients
  p.h0 = 0.5 * critical_radius(p.d1, p.a1, p.dim);
  const InitialData init = default_initial_data(p);
  const GridSpec g{128, 400, 20.0, 0.01, 50.0, 10};
  ThresholdOptions opts;
  opts.rel_tol = kThresholdRel;
  const ThresholdResult r = find_mu_star(p, init, 0.01, 20.0, g, opts);
  const double rel = r.width / r.mu_star;
  c.require(!r.trivially_zero && r.mu_star > 0.0 && rel <= kThresholdRel,
            "h0 " + fmt(p.h0, 4) + ": mu* " + fmt(r.mu_star) + ", width/mid " + fmt(rel, 3) +
                " after " + std::to_string(r.history.size()) + " probes");
  const ThresholdProbe below = probe_mu(p, init, g, 0.9 * r.mu_star, opts.horizon_cap_factor);
  const ThresholdProbe above = probe_mu(p, init, g, 1.1 * r.mu_star, opts.horizon_cap_factor);
  c.require(below.verdict == Verdict::Vanishing,
            "0.9 mu*: " + std::string(to_string(below.verdict)));
  c.require(above.verdict == Verdict::Spreading,
            "1.1 mu*: " + std::string(to_string(above.verdict)));
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&, bool)> body;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "critical constant N=1", [](Check& c, bool) { c01(c); }},
      {2, "k0 asymptotics", [](Check& c, bool) { c02(c); }},
      {3, "semi-wave first integral", [](Check& c, bool) { c03(c); }},
      {4, "scalar dichotomy", [](Check& c, bool) { c04(c); }},
      {5, "scalar spreading speed", [](Check& c, bool) { c05(c); }},
      {6, "superior-competitor dichotomy", [](Check& c, bool) { c06(c); }},
      {7, "inferior-competitor extinction", [](Check& c, bool) { c07(c); }},
      {8, "mu-monotonicity of the front", [](Check& c, bool) { c08(c); }},
      {9, "invariant audit", [](Check& c, bool alone) { c09(c, alone); }},
      {10, "mass balance convergence", [](Check& c, bool) { c10(c); }},
      {11, "oracle equivalence", [](Check& c, bool) { c11(c); }},
      {12, "threshold bisection", [](Check& c, bool) { c12(c); }},
  };

  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  const bool everything = wanted.empty();
  // The audit summarizes the other runs, so it goes last.
  std::vector<const Criterion*> order;
  for (const auto& c : all) {
    if (c.id != 9 && (everything || std::count(wanted.begin(), wanted.end(), c.id))) {
      order.push_back(&c);
    }
  }
  if (everything || std::count(wanted.begin(), wanted.end(), 9)) order.push_back(&all[8]);
  if (order.empty()) {
    std::fprintf(stderr, "no such criterion\n");
    return 2;
  }
  const bool audit_alone = order.size() == 1;

  int failures = 0;
  for (const Criterion* crit : order) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit->body(check, audit_alone);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << (check.detail.str().empty() ? "" : "; ") << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  C%02d %-32s %s (%.1fs)\n", check.ok ? "PASS" : "FAIL", crit->id,
                crit->title, check.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += check.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
