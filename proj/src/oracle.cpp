#include "lvfb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lvfb/error.hpp"

namespace lvfb {

ExplicitOracleConfig ExplicitOracleConfig::resolved(const ModelParams& p) const {
  if (!(dr > 0.0) || !(horizon > 0.0) || output_stride < 1) {
    throw Error(ErrorCode::InvalidArgument, "oracle needs dr, horizon > 0 and stride >= 1");
  }
  ExplicitOracleConfig out = *this;
  const double limit = 0.2 * dr * dr / std::max(p.d1, p.d2);
  if (out.dt == 0.0) out.dt = limit;
  if (!(out.dt > 0.0) || out.dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "oracle dt must satisfy dt <= 0.2 dr^2/max(d1, d2)");
  }
  if (!(length > 2.0 * p.h0) || p.h0 < 3.0 * dr) {
    throw Error(ErrorCode::InvalidArgument, "oracle domain must hold the front with room to spare");
  }
  return out;
}

namespace {

// Largest node index strictly inside the front.
int last_inside(double h, double dr) { return static_cast<int>(std::ceil(h / dr)) - 1; }

// Last node updated by the difference equations; a node closer than dr/2 to
// the front is slaved to the front by linear interpolation instead.
int last_active(double h, double dr) {
  const int inside = last_inside(h, dr);
  return h - inside * dr >= 0.5 * dr ? inside : inside - 1;
}

struct Integrals {
  double mass;
  double reaction;
};

Integrals integrate_u(const std::vector<double>& u, const std::vector<double>& v, double h,
                      double dr, const ModelParams& p) {
  const int inside = last_inside(h, dr);
  auto weight = [&](double r) { return std::pow(r, p.dim - 1); };
  auto react = [&](int i) { return u[i] * (p.a1 - p.b1 * u[i] - p.c1 * v[i]); };
  double mass = 0.0;
  double reaction = 0.0;
  for (int i = 0; i < inside; ++i) {
    const double rl = i * dr;
    const double rr = (i + 1) * dr;
    mass += 0.5 * dr * (weight(rl) * u[i] + weight(rr) * u[i + 1]);
    reaction += 0.5 * dr * (weight(rl) * react(i) + weight(rr) * react(i + 1));
  }
  const double tail = h - inside * dr;
  mass += 0.5 * tail * weight(inside * dr) * u[inside];
  reaction += 0.5 * tail * weight(inside * dr) * react(inside);
  return {mass, reaction};
}

}  // namespace

double OracleResult::u_at(double r) const {
  if (r < 0.0 || r >= h) return 0.0;
  const auto i = static_cast<std::size_t>(r / dr);
  const double left_r = static_cast<double>(i) * dr;
  // Linear between node i and the nearer of the next node and the front.
  const double right_r = std::min(left_r + dr, h);
  const double right = left_r + dr < h ? u[i + 1] : 0.0;
  return u[i] + (r - left_r) / (right_r - left_r) * (right - u[i]);
}

OracleResult explicit_reference(const ModelParams& p, const InitialData& init,
                                const ExplicitOracleConfig& cfg_in) {
  p.validate();
  const ExplicitOracleConfig cfg = cfg_in.resolved(p);
  const double dr = cfg.dr;
  const int n = static_cast<int>(std::ceil(cfg.length / dr));
  const int dim = p.dim;
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(u.size(), 0.0);
  double h = p.h0;
  for (int i = 0; i <= n; ++i) {
    const double r = i * dr;
    if (r < h) u[i] = init.u0(r);
    v[i] = init.v0(r);
  }
  const double blowup = 1e3 * std::max({p.u_capacity(), p.v_capacity(),
                                        *std::max_element(u.begin(), u.end()),
                                        *std::max_element(v.begin(), v.end())});

  const auto steps = static_cast<long>(std::ceil(cfg.horizon / cfg.dt - 1e-9));
  const double dt = cfg.horizon / static_cast<double>(steps);
  std::vector<double> un(u.size());
  std::vector<double> vn(v.size());
  OracleResult res;
  res.dr = dr;
  double reaction_total = 0.0;
  double h_prime = 0.0;

  auto record = [&](double t) {
    const Integrals in = integrate_u(u, v, h, dr, p);
    res.trajectory.records.push_back({t, h, h_prime, *std::max_element(u.begin(), u.end()),
                                      *std::max_element(v.begin(), v.end()), in.mass,
                                      reaction_total});
  };
  record(0.0);

  for (long step = 1; step <= steps; ++step) {
    const int active = last_active(h, dr);
    if (active < 1) throw Error(ErrorCode::InvalidArgument, "front too close to the origin");
    const double gap = h - active * dr;  // in [dr/2, 3dr/2)

    // Front flux from the parabola through (r_{a-1}, u_{a-1}), (r_a, u_a), (h, 0).
    const double s1 = gap;
    const double s2 = gap + dr;
    const double u_r = -u[active] * s2 / (s1 * dr) + u[active - 1] * s1 / (s2 * dr);
    h_prime = -p.mu * u_r;
    const double h_new = h + dt * h_prime;

    reaction_total += dt * integrate_u(u, v, h, dr, p).reaction;

    std::fill(un.begin(), un.end(), 0.0);
    for (int i = 0; i <= active; ++i) {
      double lap;
      if (i == 0) {
        lap = 2.0 * dim * (u[1] - u[0]) / (dr * dr);
      } else if (i < active) {
        lap = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dr * dr) +
              (dim - 1) / (i * dr) * (u[i + 1] - u[i - 1]) / (2.0 * dr);
      } else {
        // Unequal spacing: left neighbour at dr, the zero at the front at gap.
        const double hl = dr;
        const double hr = gap;
        const double second = 2.0 / (hl + hr) * ((0.0 - u[i]) / hr - (u[i] - u[i - 1]) / hl);
        const double first =
            (hl * hl * (0.0 - u[i]) + hr * hr * (u[i] - u[i - 1])) / (hl * hr * (hl + hr));
        lap = second + (dim - 1) / (i * dr) * first;
      }
      un[i] = u[i] + dt * (p.d1 * lap + u[i] * (p.a1 - p.b1 * u[i] - p.c1 * v[i]));
    }
    for (int i = active + 1; i * dr < h_new && i <= n; ++i) {
      un[i] = un[active] * (h_new - i * dr) / (h_new - active * dr);
    }

    for (int i = 0; i <= n; ++i) {
      double lap;
      if (i == 0) {
        lap = 2.0 * dim * (v[1] - v[0]) / (dr * dr);
      } else if (i == n) {
        lap = 2.0 * (v[n - 1] - v[n]) / (dr * dr);
      } else {
        lap = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (dr * dr) +
              (dim - 1) / (i * dr) * (v[i + 1] - v[i - 1]) / (2.0 * dr);
      }
      vn[i] = v[i] + dt * (p.d2 * lap + v[i] * (p.a2 - p.b2 * u[i] - p.c2 * v[i]));
    }

    u.swap(un);
    v.swap(vn);
    h = h_new;
    if (h > 0.9 * n * dr) {
      throw Error(ErrorCode::DomainExhausted, "oracle front left its domain");
    }
    for (int i = 0; i <= n; ++i) {
      if (!std::isfinite(u[i]) || !std::isfinite(v[i]) || std::abs(u[i]) > blowup ||
          std::abs(v[i]) > blowup) {
        throw Error(ErrorCode::Instability,
                    "explicit oracle blew up at step " + std::to_string(step));
      }
    }
    if (step % cfg.output_stride == 0 || step == steps) record(step * dt);
  }
  res.h = h;
  res.u = std::move(u);
  res.v = std::move(v);
  return res;
}

}  // namespace lvfb
