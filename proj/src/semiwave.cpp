#include "lvfb/semiwave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <string>

#include "lvfb/error.hpp"

namespace lvfb {

namespace {

using Vec2 = std::array<double, 2>;

// Phase-plane field in the backward variable s = -r: dy/ds = -F(y) with
// F(U, P) = (P, (k P - a U + b U^2) / d).
struct BackwardField {
  double a, b, d, k;
  Vec2 operator()(const Vec2& y) const {
    return {-y[1], -(k * y[1] - a * y[0] + b * y[0] * y[0]) / d};
  }
};

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
  Vec2 y;
  Vec2 f_end;
  double err;
};

StepResult dopri_step(const BackwardField& f, const Vec2& y, const Vec2& k1, double h,
                      const Vec2& scale) {
  Vec2 tmp;
  auto stage = [&](std::initializer_list<std::pair<double, const Vec2*>> terms) {
    for (int i = 0; i < 2; ++i) {
      double acc = 0.0;
      for (const auto& [coef, kv] : terms) acc += coef * (*kv)[i];
      tmp[i] = y[i] + h * acc;
    }
    return tmp;
  };
  const Vec2 k2 = f(stage({{a21, &k1}}));
  const Vec2 k3 = f(stage({{a31, &k1}, {a32, &k2}}));
  const Vec2 k4 = f(stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}));
  const Vec2 k5 = f(stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
  const Vec2 k6 = f(stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
  const Vec2 y5 = stage({{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
  const Vec2 k7 = f(y5);
  double err = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double e =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double sc = scale[i] + 1e-10 * std::max(std::abs(y[i]), std::abs(y5[i]));
    err = std::max(err, std::abs(e) / sc);
  }
  return {y5, k7, err};
}

// Cubic Hermite on [0, h] through (y0, m0) and (y1, m1), evaluated at theta*h.
double hermite(double y0, double m0, double y1, double m1, double h, double theta) {
  const double t2 = theta * theta;
  const double t3 = t2 * theta;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

struct Sample {
  double s, u, p;
};

// Walks the manifold and returns slope0; optionally records (s, U, U').
double trace_manifold(double a, double b, double d, double k, std::vector<Sample>* out,
                      double* s_cross_out) {
  if (!(a > 0.0) || !(b > 0.0) || !(d > 0.0) || !(k >= 0.0) || !std::isfinite(k)) {
    throw Error(ErrorCode::InvalidArgument, "semi-wave needs a, b, d > 0 and k >= 0");
  }
  const double k_max = 2.0 * std::sqrt(a * d);
  if (k >= k_max) {
    throw Error(ErrorCode::NotInSpeedRange,
                "k=" + std::to_string(k) + " must stay below 2 sqrt(ad)=" + std::to_string(k_max));
  }
  const BackwardField f{a, b, d, k};
  const double cap = a / b;
  const double ell = std::sqrt(d / a);
  const double eps = 1e-8 * cap;
  const double stable = (k - std::sqrt(k * k + 4.0 * a * d)) / (2.0 * d);
  Vec2 y{cap - eps, -stable * eps};
  // Absolute floor well below the relative target so small states stay resolved.
  const Vec2 scale{1e-14 * cap, 1e-14 * cap / ell};

  double s = 0.0;
  double h = 1e-3 * ell;
  Vec2 fy = f(y);
  if (out) out->push_back({s, y[0], y[1]});

  const double tail_radius = 1e-6 * cap;
  constexpr long max_steps = 2'000'000;
  for (long n = 0; n < max_steps; ++n) {
    if (std::hypot(y[0], y[1] * ell) < tail_radius) {
      // Near the origin the nonlinearity is negligible: follow the linear
      // spiral U = e^{-alpha sigma} R sin(theta - omega sigma) to its zero.
      const double alpha = k / (2.0 * d);
      const double omega = std::sqrt(4.0 * a * d - k * k) / (2.0 * d);
      const double c = (y[1] - alpha * y[0]) / omega;
      const double radius = std::hypot(y[0], c);
      const double theta = std::atan2(y[0], c);
      const double sigma_star = theta / omega;
      if (out) {
        constexpr int tail_samples = 32;
        for (int i = 1; i < tail_samples; ++i) {
          const double sig = sigma_star * i / tail_samples;
          const double decay = std::exp(-alpha * sig);
          const double cs = std::cos(omega * sig);
          const double sn = std::sin(omega * sig);
          const double u = decay * (y[0] * cs - c * sn);
          const double p = decay * (alpha * (y[0] * cs - c * sn) + omega * (y[0] * sn + c * cs));
          if (u > 0.0) out->push_back({s + sig, u, p});
        }
      }
      if (s_cross_out) *s_cross_out = s + sigma_star;
      return radius * omega * std::exp(-alpha * sigma_star);
    }

    const StepResult step = dopri_step(f, y, fy, h, scale);
    const double err = step.err;
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (h < 1e-14 * (ell + s)) {
        throw Error(ErrorCode::IntegrationFailure, "semi-wave step size collapsed");
      }
      continue;
    }
    if (step.y[0] <= 0.0) {
      // Crossing inside this step: locate U = 0 on the Hermite cubic.
      double lo = 0.0;
      double hi = 1.0;
      for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hermite(y[0], fy[0], step.y[0], step.f_end[0], h, mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      const double theta = 0.5 * (lo + hi);
      const double slope = hermite(y[1], fy[1], step.y[1], step.f_end[1], h, theta);
      if (s_cross_out) *s_cross_out = s + theta * h;
      return slope;
    }
    s += h;
    y = step.y;
    fy = step.f_end;
    if (out) out->push_back({s, y[0], y[1]});
    h *= std::min(5.0, 0.9 * std::pow(std::max(err, 1e-10), -0.2));
  }
  throw Error(ErrorCode::IntegrationFailure, "semi-wave integration did not reach U = 0");
}

}  // namespace

double SemiWaveProfile::value_at(double r) const {
  if (grid.empty()) return 0.0;
  if (r <= grid.front()) return values.front();
  if (r >= grid.back()) return values.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), r);
  const auto i = static_cast<std::size_t>(it - grid.begin()) - 1;
  const double h = grid[i + 1] - grid[i];
  return hermite(values[i], slopes[i], values[i + 1], slopes[i + 1], h, (r - grid[i]) / h);
}

SemiWaveProfile solve_semiwave(double a, double b, double d, double k) {
  std::vector<Sample> samples;
  double s_cross = 0.0;
  SemiWaveProfile prof;
  prof.slope0 = trace_manifold(a, b, d, k, &samples, &s_cross);
  prof.k = k;
  prof.a = a;
  prof.b = b;
  prof.d = d;
  const std::size_t n = samples.size() + 1;
  prof.grid.reserve(n);
  prof.values.reserve(n);
  prof.slopes.reserve(n);
  prof.grid.push_back(0.0);
  prof.values.push_back(0.0);
  prof.slopes.push_back(prof.slope0);
  for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
    const double r = s_cross - it->s;
    if (r <= prof.grid.back()) continue;
    prof.grid.push_back(r);
    prof.values.push_back(it->u);
    prof.slopes.push_back(it->p);
  }
  return prof;
}

double semiwave_slope(double a, double b, double d, double k) {
  return trace_manifold(a, b, d, k, nullptr, nullptr);
}

double find_k0(double mu, double a, double b, double d) {
  if (!(mu > 0.0) || !(a > 0.0) || !(b > 0.0) || !(d > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "find_k0 needs mu, a, b, d > 0");
  }
  const double unit = std::sqrt(a * d);
  const double delta = 1e-6 * unit;
  const auto g = [&](double k) { return mu * semiwave_slope(a, b, d, k) - k; };
  double lo = delta;
  double hi = 2.0 * unit - delta;
  if (!(g(lo) > 0.0) || !(g(hi) < 0.0)) {
    throw Error(ErrorCode::BracketFailure, "mu U'(0) - k does not change sign on (0, 2 sqrt(ad))");
  }
  const double tol = 1e-8 * unit;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace lvfb
