#include <doctest.h>

#include <cmath>

#include "lvfb/eigen.hpp"
#include "lvfb/error.hpp"
#include "lvfb/oracle.hpp"

using namespace lvfb;

namespace {

ModelParams scalar_params(double mu) {
  ModelParams p;
  p.a1 = 1.0;
  p.a2 = 0.5;
  p.c1 = 0.0;
  p.h0 = 1.0;
  p.mu = mu;
  return p;
}

}  // namespace

TEST_SUITE("oracle") {
  TEST_CASE("stability limit is enforced") {
    const ModelParams p;
    ExplicitOracleConfig cfg;
    cfg.dr = 0.02;
    cfg.dt = 0.25 * cfg.dr * cfg.dr;
    CHECK_THROWS_AS(cfg.resolved(p), Error);
    cfg.dt = 0.0;
    CHECK(cfg.resolved(p).dt == doctest::Approx(0.2 * 0.02 * 0.02));
    cfg.dr = 0.5;  // front spans fewer than three cells
    CHECK_THROWS_AS(cfg.resolved(p), Error);
  }

  TEST_CASE("equilibrium is exactly stationary") {
    const ModelParams p;
    InitialData init;
    init.u0 = [](double) { return 0.0; };
    init.v0 = [](double) { return 1.0; };
    ExplicitOracleConfig cfg;
    cfg.dr = 0.02;
    cfg.horizon = 0.5;
    const OracleResult r = explicit_reference(p, init, cfg);
    CHECK(r.h == p.h0);
    for (double u : r.u) CHECK(u == 0.0);
    for (double v : r.v) CHECK(v == 1.0);
  }

  TEST_CASE("small front with tiny mu decays") {
    ModelParams p = scalar_params(1e-3);
    p.h0 = 0.5 * critical_radius(p.d1, p.a1, p.dim);
    ExplicitOracleConfig cfg;
    cfg.dr = 0.01;
    cfg.horizon = 3.0;
    cfg.output_stride = 500;
    const OracleResult r = explicit_reference(p, parabolic_initial_data(p, 0.5, 0.0), cfg);
    double prev = 1e300;
    for (const auto& rec : r.trajectory.records) {
      if (rec.t < 1.0) continue;
      CHECK(rec.sup_u < prev);
      prev = rec.sup_u;
    }
    CHECK(r.h > p.h0);
  }

  TEST_CASE("refinement converges monotonically") {
    const ModelParams p;
    const InitialData init = default_initial_data(p);
    double h_prev = 0.0;
    double change_prev = 1e300;
    for (double dr : {0.04, 0.02, 0.01}) {
      ExplicitOracleConfig cfg;
      cfg.dr = dr;
      cfg.horizon = 1.0;
      cfg.length = 8.0;
      cfg.output_stride = 1000;
      const double h = explicit_reference(p, init, cfg).h;
      if (h_prev > 0.0) {
        const double change = std::abs(h - h_prev);
        CHECK(change < change_prev);
        change_prev = change;
      }
      h_prev = h;
    }
  }

  TEST_CASE("field sampling") {
    const ModelParams p;
    ExplicitOracleConfig cfg;
    cfg.dr = 0.02;
    cfg.horizon = 0.1;
    const OracleResult r = explicit_reference(p, default_initial_data(p), cfg);
    CHECK(r.u_at(r.h + 0.1) == 0.0);
    CHECK(r.u_at(0.0) == r.u[0]);
    CHECK(r.u_at(0.5 * r.dr) == doctest::Approx(0.5 * (r.u[0] + r.u[1])));
    CHECK(r.trajectory.records.back().t == doctest::Approx(0.1));
  }
}
