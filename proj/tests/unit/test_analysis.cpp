#include <doctest.h>

#include <cmath>
#include <string>

#include "helpers.hpp"
#include "lvfb/analysis.hpp"
#include "lvfb/eigen.hpp"
#include "lvfb/error.hpp"
#include "lvfb/semiwave.hpp"

using namespace lvfb;
using lvfb::testing::coarse_grid;

namespace {

Trajectory line(double h0, double slope, double t_end, int n, double sup_u = 1.0) {
  Trajectory t;
  for (int i = 0; i <= n; ++i) {
    const double ti = t_end * i / n;
    t.records.push_back({ti, h0 + slope * ti, slope, sup_u, 1.0, 0.0, 0.0});
  }
  return t;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("front above the vanishing bound spreads immediately") {
    ModelParams p;
    p.h0 = 1.01 * vanishing_bound(p);
    const auto c = classify(line(p.h0, 0.0, 1.0, 4), p);
    CHECK(c.verdict == Verdict::Spreading);
    CHECK(c.vanishing_bound == doctest::Approx(vanishing_bound(p)));
  }

  TEST_CASE("frozen small ball vanishes") {
    ModelParams p;
    p.mu = 0.0;
    p.h0 = 0.9 * critical_radius(p.d1, p.a1, p.dim);
    const SimulationResult run = simulate(p, default_initial_data(p), coarse_grid(30.0));
    const auto c = classify(run.trajectory, p);
    CHECK(c.verdict == Verdict::Vanishing);
    CHECK(c.h_final == p.h0);
  }

  TEST_CASE("short horizon on a marginal case is undetermined") {
    ModelParams p;
    p.mu = 0.05;
    const SimulationResult run = simulate(p, default_initial_data(p), coarse_grid(1.0));
    CHECK(classify(run.trajectory, p).verdict == Verdict::Undetermined);
  }

  TEST_CASE("spreading criterion uses the margin") {
    const ModelParams p;
    const double vb = vanishing_bound(p);
    ClassificationTolerances tol;
    const Trajectory near = line(0.8, (1.04 * vb - 0.8) / 10.0, 10.0, 100);
    CHECK(classify(near, p, tol).verdict == Verdict::Undetermined);
    tol.spreading_margin = 1.01;
    CHECK(classify(near, p, tol).verdict == Verdict::Spreading);
    CHECK(stop_when_spreading(p)({0.0, 1.06 * vb, 0, 0, 0, 0, 0}));
    CHECK_FALSE(stop_when_spreading(p)({0.0, 1.04 * vb, 0, 0, 0, 0, 0}));
  }

  TEST_CASE("vanishing needs both quiet u and a flat front") {
    const ModelParams p;
    CHECK(classify(line(0.9, 0.0, 10.0, 100, 1e-5), p).verdict == Verdict::Vanishing);
    CHECK(classify(line(0.9, 1e-3, 10.0, 100, 1e-5), p).verdict == Verdict::Undetermined);
    CHECK(classify(line(0.9, 0.0, 10.0, 100, 0.1), p).verdict == Verdict::Undetermined);
  }

  TEST_CASE("classification is for the superior regime only") {
    CHECK(code_of([] { classify(line(1, 0, 1, 2), lvfb::testing::inferior()); }) ==
          ErrorCode::WrongRegime);
  }

  TEST_CASE("classification is monotone in mu") {
    ModelParams p;
    const GridSpec g = coarse_grid(20.0);
    std::vector<Verdict> verdicts;
    for (double mu : {0.01, 0.05, 0.1, 0.5, 2.0}) {
      p.mu = mu;
      SimulateOptions opts;
      opts.tolerate_domain_exhaustion = true;
      const SimulationResult run = simulate(p, default_initial_data(p), g, opts);
      verdicts.push_back(classify(run.trajectory, p).verdict);
    }
    for (std::size_t i = 0; i + 1 < verdicts.size(); ++i) {
      if (verdicts[i] == Verdict::Spreading) CHECK(verdicts[i + 1] == Verdict::Spreading);
      if (verdicts[i + 1] == Verdict::Vanishing) CHECK(verdicts[i] != Verdict::Spreading);
    }
    CHECK(verdicts.front() == Verdict::Vanishing);
    CHECK(verdicts.back() == Verdict::Spreading);
  }

  TEST_CASE("speed fit of a straight line") {
    const ModelParams p;
    const SpeedEstimate e = estimate_speed(line(2.0, 1.8, 20.0, 200), p);
    CHECK(e.c_hat == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(e.residual < 1e-10);
    CHECK(e.points == 101);
    CHECK(e.lower < e.upper);
    CHECK(e.lower == doctest::Approx(find_k0(p.mu, 2.0, 1.0, 1.0)));
    CHECK(e.upper == doctest::Approx(find_k0(p.mu, 3.0, 1.0, 1.0)));
  }

  TEST_CASE("speed bounds coincide without competition") {
    ModelParams p;
    p.a1 = 1.0;
    p.a2 = 0.5;
    p.c1 = 0.0;
    const SpeedEstimate e = estimate_speed(line(2.0, 1.0, 20.0, 200), p);
    CHECK(e.lower == e.upper);
  }

  TEST_CASE("speed needs a spreading run with enough records") {
    const ModelParams p;
    CHECK(code_of([&] { estimate_speed(line(0.8, 0.0, 10.0, 100), p); }) ==
          ErrorCode::NotSpreading);
    CHECK(code_of([&] { estimate_speed(line(2.0, 1.0, 10.0, 10), p); }) ==
          ErrorCode::InvalidArgument);
  }

  TEST_CASE("inferior check") {
    const ModelParams p = lvfb::testing::inferior();
    const GridSpec g = coarse_grid(40.0);
    const SimulationResult run = simulate(p, default_initial_data(p), g);
    const InferiorReport ok = inferior_longtime_check(run.trajectory, run.final_state, p);
    CHECK(ok.passed);
    CHECK(ok.plateaued);

    const SimulationResult short_run = simulate(p, default_initial_data(p), coarse_grid(1.0));
    const InferiorReport early =
        inferior_longtime_check(short_run.trajectory, short_run.final_state, p);
    CHECK_FALSE(early.passed);
    CHECK(early.diagnostics.find("not plateaued") != std::string::npos);

    const ModelParams sup;
    CHECK(code_of([&] { inferior_longtime_check(run.trajectory, run.final_state, sup); }) ==
          ErrorCode::WrongRegime);
  }

  TEST_CASE("threshold is zero above the vanishing bound") {
    ModelParams p;
    p.h0 = 1.2 * vanishing_bound(p);
    const ThresholdResult r = find_mu_star(p, default_initial_data(p), 0.01, 1.0, coarse_grid());
    CHECK(r.trivially_zero);
    CHECK(r.mu_star == 0.0);
    CHECK(r.history.empty());
  }

  TEST_CASE("invalid bracket reports both verdicts") {
    const ModelParams p;
    try {
      find_mu_star(p, default_initial_data(p), 5.0, 10.0, coarse_grid(10.0));
      FAIL("expected BracketInvalid");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BracketInvalid);
      const std::string what = e.what();
      CHECK(what.find("Spreading") != std::string::npos);
      CHECK(what.find("mu_lo") != std::string::npos);
      CHECK(what.find("mu_hi") != std::string::npos);
    }
    CHECK(code_of([&] { find_mu_star(p, default_initial_data(p), 2.0, 1.0, coarse_grid()); }) ==
          ErrorCode::BracketInvalid);
  }

  TEST_CASE("undetermined probes extend the horizon up to the cap") {
    const ModelParams p;
    CHECK(code_of([&] {
            probe_mu(p, default_initial_data(p), coarse_grid(0.5), 0.02, 2.0);
          }) == ErrorCode::HorizonExhausted);
    const ThresholdProbe pr = probe_mu(p, default_initial_data(p), coarse_grid(5.0), 0.02, 8.0);
    CHECK(pr.verdict == Verdict::Vanishing);
    CHECK(pr.horizon > 5.0);
  }

  TEST_CASE("bisection brackets the threshold") {
    ModelParams p;
    GridSpec g = coarse_grid(20.0);
    ThresholdOptions opts;
    opts.rel_tol = 0.05;
    const ThresholdResult r = find_mu_star(p, default_initial_data(p), 0.01, 2.0, g, opts);
    CHECK_FALSE(r.trivially_zero);
    CHECK(r.width <= 0.05 * r.mu_star);
    CHECK(r.lo < r.mu_star);
    CHECK(r.mu_star < r.hi);
    // Each accepted bisection step halves the bracket.
    double width = 2.0 - 0.01;
    for (std::size_t k = 2; k < r.history.size(); ++k) width *= 0.5;
    CHECK(r.width == doctest::Approx(width));
  }
}
