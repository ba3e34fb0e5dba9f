#include "lvfb/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "lvfb/error.hpp"

namespace lvfb {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::SuperiorU: return "SuperiorU";
    case Regime::InferiorU: return "InferiorU";
    case Regime::WeakCompetition: return "WeakCompetition";
    case Regime::StrongCompetition: return "StrongCompetition";
  }
  return "Unknown";
}

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, std::string(field) + " must be " + rule);
}

bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }

// Sign of x - y with ties within rel_tol reported as 0.
int compare(double x, double y, double rel_tol) {
  const double scale = std::max(std::abs(x), std::abs(y));
  if (std::abs(x - y) <= rel_tol * scale) return 0;
  return x > y ? 1 : -1;
}

}  // namespace

void ModelParams::validate() const {
  require(positive(d1), "d1", "positive");
  require(positive(d2), "d2", "positive");
  require(positive(a1), "a1", "positive");
  require(positive(a2), "a2", "positive");
  require(positive(b1), "b1", "positive");
  require(nonnegative(b2), "b2", "non-negative");
  require(nonnegative(c1), "c1", "non-negative");
  require(positive(c2), "c2", "positive");
  require(nonnegative(mu), "mu", "non-negative");
  require(positive(h0), "h0", "positive");
  require(dim >= 1, "dim", ">= 1");
}

Regime classify_regime(const ModelParams& p) {
  p.validate();
  constexpr double tol = 1e-12;
  // Ratios compared by cross-multiplication; a zero b2 stands for b1/b2 = inf.
  const int a_vs_b = compare(p.a1 * p.b2, p.a2 * p.b1, tol);
  const int a_vs_c = compare(p.a1 * p.c2, p.a2 * p.c1, tol);
  // b1/b2 = c1/c2 is harmless: a1/a2 then sits strictly above or below both.
  if (a_vs_b == 0 || a_vs_c == 0) {
    throw Error(ErrorCode::BoundaryRegime, "a1/a2 must differ from both b1/b2 and c1/c2");
  }
  if (a_vs_b > 0 && a_vs_c > 0) return Regime::SuperiorU;
  if (a_vs_b < 0 && a_vs_c < 0) return Regime::InferiorU;
  if (a_vs_b < 0) return Regime::WeakCompetition;  // b1/b2 > a1/a2 > c1/c2
  return Regime::StrongCompetition;                // b1/b2 < a1/a2 < c1/c2
}

SteadyStates steady_states(const ModelParams& p) {
  p.validate();
  const double det = p.b1 * p.c2 - p.b2 * p.c1;
  const double scale = std::max(p.b1 * p.c2, p.b2 * p.c1);
  if (std::abs(det) < 1e-14 * scale) {
    throw Error(ErrorCode::DegenerateDeterminant, "b1*c2 - b2*c1 vanishes");
  }
  SteadyStates s;
  s.r1 = {p.a1 / p.b1, 0.0};
  s.r2 = {0.0, p.a2 / p.c2};
  const double us = (p.a1 * p.c2 - p.a2 * p.c1) / det;
  const double vs = (p.a2 * p.b1 - p.a1 * p.b2) / det;
  if (us > 0.0 && vs > 0.0) s.coexistence = DensityPair{us, vs};
  return s;
}

double logistic_ode(double a, double b, double u_init, double t) {
  if (!positive(a) || !positive(b) || !positive(u_init) || !nonnegative(t)) {
    throw Error(ErrorCode::InvalidArgument, "logistic_ode needs a, b, u_init > 0 and t >= 0");
  }
  const double decay = std::exp(-a * t);
  return a * u_init / (b * u_init + (a - b * u_init) * decay);
}

namespace {

using State2 = std::array<double, 2>;

State2 lv_rhs(const ModelParams& p, const State2& y) {
  return {y[0] * (p.a1 - p.b1 * y[0] - p.c1 * y[1]),
          y[1] * (p.a2 - p.b2 * y[0] - p.c2 * y[1])};
}

std::vector<OdeSample> rk4_run(const ModelParams& p, double z0, double w0, double t_end,
                               double dt) {
  const auto steps = static_cast<long>(std::ceil(t_end / dt - 1e-9));
  const double h = t_end / static_cast<double>(steps);
  std::vector<OdeSample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  State2 y{z0, w0};
  out.push_back({0.0, y[0], y[1]});
  for (long n = 0; n < steps; ++n) {
    const State2 k1 = lv_rhs(p, y);
    const State2 k2 = lv_rhs(p, {y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]});
    const State2 k3 = lv_rhs(p, {y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]});
    const State2 k4 = lv_rhs(p, {y[0] + h * k3[0], y[1] + h * k3[1]});
    for (int i = 0; i < 2; ++i) y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.push_back({static_cast<double>(n + 1) * h, y[0], y[1]});
  }
  return out;
}

}  // namespace

std::vector<OdeSample> lv_ode(const ModelParams& p, double z0, double w0, double t_end,
                              double dt) {
  p.validate();
  if (!nonnegative(z0) || !nonnegative(w0) || !positive(t_end) || !positive(dt)) {
    throw Error(ErrorCode::InvalidArgument, "lv_ode needs z0, w0 >= 0 and t_end, dt > 0");
  }
  auto coarse = rk4_run(p, z0, w0, t_end, dt);
  const auto fine = rk4_run(p, z0, w0, t_end, 0.5 * dt);
  const double diff = std::max(std::abs(coarse.back().z - fine.back().z),
                               std::abs(coarse.back().w - fine.back().w));
  if (!(diff < 1e-6)) {
    throw Error(ErrorCode::StepSizeTooLarge,
                "halving dt moved the endpoint by " + std::to_string(diff));
  }
  return coarse;
}

void InitialData::validate(const ModelParams& p, double r_max) {
  if (!u0 || !v0) throw Error(ErrorCode::InvalidArgument, "initial profiles must be set");
  constexpr int samples = 1000;
  double sup_u = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double r = p.h0 * j / samples;
    const double val = u0(r);
    if (!(std::isfinite(val) && val > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "u0 must be positive on [0, h0), fails at r=" +
                                                  std::to_string(r));
    }
    sup_u = std::max(sup_u, val);
  }
  if (std::abs(u0(p.h0)) > 1e-12 * sup_u) {
    throw Error(ErrorCode::InvalidArgument, "u0(h0) must vanish");
  }
  const double delta = 1e-4 * p.h0;
  if (std::abs(u0(delta) - u0(0.0)) / delta > 1e-3 * sup_u / p.h0) {
    throw Error(ErrorCode::InvalidArgument, "u0 must have zero slope at r=0");
  }

  double inf_v = INFINITY;
  double far_inf_v = INFINITY;
  for (int i = 0; i <= samples; ++i) {
    const double r = r_max * i / samples;
    const double val = v0(r);
    if (!(std::isfinite(val) && val >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "v0 must be finite and non-negative");
    }
    inf_v = std::min(inf_v, val);
    if (i >= samples * 9 / 10) far_inf_v = std::min(far_inf_v, val);
  }
  v0_positive_infimum = inf_v > 0.0;
  v0_at_capacity_far_field = far_inf_v >= p.v_capacity() * (1.0 - 1e-12);
}

InitialData parabolic_initial_data(const ModelParams& p, double amplitude, double v_level) {
  const double h0 = p.h0;
  InitialData init;
  init.u0 = [amplitude, h0](double r) {
    const double s = r / h0;
    return s >= 1.0 ? 0.0 : amplitude * (1.0 - s * s);
  };
  init.v0 = [v_level](double) { return v_level; };
  init.v0_positive_infimum = v_level > 0.0;
  init.v0_at_capacity_far_field = v_level >= p.v_capacity() * (1.0 - 1e-12);
  return init;
}

InitialData default_initial_data(const ModelParams& p) {
  return parabolic_initial_data(p, p.a1 / (2.0 * p.b1), p.v_capacity());
}

}  // namespace lvfb
