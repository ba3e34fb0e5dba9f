#include "lvfb/fbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "lvfb/error.hpp"
#include "lvfb/tridiag.hpp"

namespace lvfb {

void GridSpec::validate(const ModelParams& p) const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  if (m_u < 16) fail("m_u must be >= 16");
  if (m_v < 16) fail("m_v must be >= 16");
  if (!(dt > 0.0)) fail("dt must be positive");
  if (dt > 0.1 / std::max(p.a1, p.a2) * (1.0 + 1e-12)) fail("dt must be <= 0.1/max(a1, a2)");
  if (!(L_v > 4.0 * p.h0)) fail("L_v must exceed 4 h0");
  if (!(t_end > 0.0)) fail("t_end must be positive");
  if (output_stride < 1) fail("output_stride must be >= 1");
}

namespace {

// Linear interpolation of samples on x_i = i dx, clamped at both ends.
double interp_uniform(const std::vector<double>& f, double dx, double x) {
  const double pos = x / dx;
  if (pos <= 0.0) return f.front();
  const auto last = static_cast<double>(f.size() - 1);
  if (pos >= last) return f.back();
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return f[i] + frac * (f[i + 1] - f[i]);
}

// int_0^1 rho^{N-1} f drho by the trapezoid rule on rho_j = j/m.
double radial_trapezoid(const std::vector<double>& f, int dim) {
  const int m = static_cast<int>(f.size()) - 1;
  const double dr = 1.0 / m;
  double acc = 0.0;
  for (int j = 0; j <= m; ++j) {
    const double w = (j == 0 || j == m) ? 0.5 : 1.0;
    acc += w * std::pow(j * dr, dim - 1) * f[j];
  }
  return acc * dr;
}

// Diffusion plus first-derivative transport, diffusion * (f'' + (N-1)/x f') +
// drift * f', at x_j = j dx.  Central where the cell Peclet number is at most
// one, otherwise the first-derivative part is upwinded so the implicit matrix
// stays an M-matrix.
StencilRow transport_row(int j, int dim, double dx, double diffusion, double drift) {
  if (j == 0) {
    const StencilRow lap = radial_laplacian_row(0, dim, dx);
    return {0.0, diffusion * lap.diag, diffusion * lap.upper};
  }
  const double x = j * dx;
  const double beta = diffusion * (dim - 1) / x + drift;
  const double second = diffusion / (dx * dx);
  if (std::abs(beta) * dx <= 2.0 * diffusion) {
    const StencilRow lap = radial_laplacian_row(j, dim, dx);
    const double c = drift / (2.0 * dx);
    return {diffusion * lap.lower - c, diffusion * lap.diag, diffusion * lap.upper + c};
  }
  if (beta > 0.0) return {second, -2.0 * second - beta / dx, second + beta / dx};
  return {second - beta / dx, -2.0 * second + beta / dx, second};
}

class Stepper {
 public:
  explicit Stepper(const ModelParams& p) : p_(p) {}

  // Advances in place; returns dt * int_0^h r^{N-1} (u reaction) dr for the step.
  double advance(SolverState& s, double dt) {
    const int mu_cells = s.m_u();
    const int mv_cells = s.m_v();
    const double drho = 1.0 / mu_cells;
    const double dr = s.L_v / mv_cells;
    const int n = p_.dim;

    // Stefan condition with the one-sided three-point flux at rho = 1.
    const double w_rho = (3.0 * s.u[mu_cells] - 4.0 * s.u[mu_cells - 1] + s.u[mu_cells - 2]) /
                         (2.0 * drho);
    const double u_r = w_rho / s.h;
    const double h_new = s.h - dt * p_.mu * u_r;
    if (h_new - s.h < -1e-12) {
      throw Error(ErrorCode::FrontRetreat, "front moved from " + std::to_string(s.h) + " to " +
                                               std::to_string(h_new));
    }
    if (h_new > 0.9 * s.L_v) {
      throw Error(ErrorCode::DomainExhausted,
                  "front h=" + std::to_string(h_new) + " passed 0.9 L_v");
    }
    const MovingFrameCoefficients coef =
        transform_equation_coefficients(p_.d1, h_new, (h_new - s.h) / dt, n);

    // u: implicit transport, explicit reaction with v sampled at rho_j h_new.
    const std::size_t nu = static_cast<std::size_t>(mu_cells);
    resize(nu);
    reaction_.assign(nu + 1, 0.0);
    for (int j = 0; j < mu_cells; ++j) {
      const double w = s.u[j];
      const double vv = interp_uniform(s.v, dr, j * drho * h_new);
      reaction_[j] = w * (p_.a1 - p_.b1 * w - p_.c1 * vv);
      const StencilRow row =
          transport_row(j, n, drho, coef.diffusion, coef.advection_at(j * drho));
      lower_[j] = -dt * row.lower;
      diag_[j] = 1.0 - dt * row.diag;
      upper_[j] = j + 1 < mu_cells ? -dt * row.upper : 0.0;
      rhs_[j] = w + dt * reaction_[j];
    }
    tridiag_solve_into(lower_, diag_, upper_, rhs_, sol_, scratch_);
    std::copy(sol_.begin(), sol_.end(), s.u.begin());
    s.u[nu] = 0.0;
    const double reaction_term =
        dt * std::pow(h_new, n) * radial_trapezoid(reaction_, n);

    // v: implicit diffusion, explicit reaction with u extended by zero past h.
    const std::size_t nv = static_cast<std::size_t>(mv_cells) + 1;
    resize(nv);
    for (int i = 0; i <= mv_cells; ++i) {
      const double r = i * dr;
      const double uu = r < h_new ? interp_uniform(s.u, drho, r / h_new) : 0.0;
      const double vv = s.v[i];
      StencilRow row;
      if (i == mv_cells) {
        row = {2.0 * p_.d2 / (dr * dr), -2.0 * p_.d2 / (dr * dr), 0.0};
      } else {
        row = transport_row(i, n, dr, p_.d2, 0.0);
      }
      lower_[i] = -dt * row.lower;
      diag_[i] = 1.0 - dt * row.diag;
      upper_[i] = -dt * row.upper;
      rhs_[i] = vv + dt * vv * (p_.a2 - p_.b2 * uu - p_.c2 * vv);
    }
    tridiag_solve_into(lower_, diag_, upper_, rhs_, sol_, scratch_);
    std::copy(sol_.begin(), sol_.end(), s.v.begin());

    s.h_prev = s.h;
    s.h = h_new;
    s.t += dt;
    return reaction_term;
  }

 private:
  void resize(std::size_t n) {
    lower_.resize(n);
    diag_.resize(n);
    upper_.resize(n);
    rhs_.resize(n);
    sol_.resize(n);
  }

  ModelParams p_;
  std::vector<double> lower_, diag_, upper_, rhs_, sol_, scratch_, reaction_;
};

double initial_bound(double capacity, double sup0) {
  return std::max(capacity, sup0) * (1.0 + 1e-6);
}

void check_bounds(const SolverState& s, const InvariantAudit& audit) {
  const auto [umin, umax] = std::minmax_element(s.u.begin(), s.u.end());
  const auto [vmin, vmax] = std::minmax_element(s.v.begin(), s.v.end());
  if (*umin < -1e-12 || *vmin < -1e-12) {
    throw Error(ErrorCode::BoundBreach, "negative density at t=" + std::to_string(s.t) +
                                            " (dt too large?)");
  }
  if (*umax > audit.bound_u || *vmax > audit.bound_v) {
    throw Error(ErrorCode::BoundBreach,
                "density above its a-priori bound at t=" + std::to_string(s.t));
  }
}

double mass_of(const SolverState& s, int dim) {
  return std::pow(s.h, dim) * radial_trapezoid(s.u, dim);
}

}  // namespace

double SolverState::u_at(double r) const {
  if (r >= h || r < 0.0) return 0.0;
  return interp_uniform(u, 1.0 / m_u(), r / h);
}

double SolverState::v_at(double r) const { return interp_uniform(v, L_v / m_v(), r); }

double SolverState::sup_u() const { return *std::max_element(u.begin(), u.end()); }
double SolverState::sup_v() const { return *std::max_element(v.begin(), v.end()); }

SolverState make_initial_state(const ModelParams& p, const InitialData& init, const GridSpec& g) {
  p.validate();
  g.validate(p);
  if (!init.u0 || !init.v0) throw Error(ErrorCode::InvalidArgument, "initial profiles must be set");
  SolverState s;
  s.h = p.h0;
  s.h_prev = p.h0;
  s.L_v = g.L_v;
  s.u.resize(static_cast<std::size_t>(g.m_u) + 1);
  for (int j = 0; j < g.m_u; ++j) s.u[j] = init.u0(p.h0 * j / g.m_u);
  s.u[g.m_u] = 0.0;
  s.v.resize(static_cast<std::size_t>(g.m_v) + 1);
  for (int i = 0; i <= g.m_v; ++i) s.v[i] = init.v0(g.L_v * i / g.m_v);
  return s;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "t,h,h_prime,sup_u,sup_v,mass_u\n";
  const auto old_prec = os.precision(12);
  for (const auto& r : traj.records) {
    os << r.t << ',' << r.h << ',' << r.h_prime << ',' << r.sup_u << ',' << r.sup_v << ','
       << r.mass_u << '\n';
  }
  os.precision(old_prec);
}

MovingFrameCoefficients transform_equation_coefficients(double d1, double h, double h_prime,
                                                        int dim) {
  if (!(h > 0.0)) throw Error(ErrorCode::InvalidArgument, "front radius must be positive");
  return {d1 / (h * h), h_prime / h, dim};
}

StencilRow radial_laplacian_row(int j, int dim, double dx) {
  const double inv2 = 1.0 / (dx * dx);
  if (j == 0) return {0.0, -2.0 * dim * inv2, 2.0 * dim * inv2};
  const double first = (dim - 1) / (2.0 * j) * inv2;  // (N-1)/x_j / (2 dx)
  return {inv2 - first, -2.0 * inv2, inv2 + first};
}

int InvariantAudit::violations() const {
  int count = 0;
  if (min_u < -1e-12) ++count;
  if (min_v < -1e-12) ++count;
  if (max_sup_u > bound_u) ++count;
  if (max_sup_v > bound_v) ++count;
  if (min_dh < -1e-12) ++count;
  return count;
}

void InvariantAudit::observe(const SolverState& s, double dh) {
  const auto [umin, umax] = std::minmax_element(s.u.begin(), s.u.end());
  const auto [vmin, vmax] = std::minmax_element(s.v.begin(), s.v.end());
  if (steps_checked == 0) {
    min_u = *umin;
    min_v = *vmin;
    min_dh = dh;
  }
  min_u = std::min(min_u, *umin);
  min_v = std::min(min_v, *vmin);
  max_sup_u = std::max(max_sup_u, *umax);
  max_sup_v = std::max(max_sup_v, *vmax);
  min_dh = std::min(min_dh, dh);
  ++steps_checked;
}

SolverState step(const SolverState& state, const ModelParams& p, const GridSpec& g) {
  p.validate();
  g.validate(p);
  SolverState next = state;
  Stepper stepper(p);
  stepper.advance(next, g.dt);
  InvariantAudit audit;
  audit.bound_u = initial_bound(p.u_capacity(), state.sup_u());
  audit.bound_v = initial_bound(p.v_capacity(), state.sup_v());
  check_bounds(next, audit);
  return next;
}

SimulationResult simulate(const ModelParams& p, const InitialData& init, const GridSpec& g,
                          const SimulateOptions& opts) {
  SimulationResult res;
  SolverState s = make_initial_state(p, init, g);
  res.audit.bound_u = initial_bound(p.u_capacity(), s.sup_u());
  res.audit.bound_v = initial_bound(p.v_capacity(), s.sup_v());
  res.audit.observe(s, 0.0);

  const auto steps = static_cast<long>(std::ceil(g.t_end / g.dt - 1e-9));
  const double dt = g.t_end / static_cast<double>(steps);
  Stepper stepper(p);
  double reaction_total = 0.0;

  std::vector<double> pending = opts.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next_snapshot = 0;
  auto take_snapshots = [&]() {
    while (next_snapshot < pending.size() && s.t >= pending[next_snapshot] - 0.5 * dt) {
      res.snapshots.push_back({pending[next_snapshot], s});
      ++next_snapshot;
    }
  };

  auto record = [&](double h_prime) {
    res.trajectory.records.push_back(
        {s.t, s.h, h_prime, s.sup_u(), s.sup_v(), mass_of(s, p.dim), reaction_total});
    return opts.stop && opts.stop(res.trajectory.records.back());
  };

  const int m = s.m_u();
  const double initial_flux =
      (3.0 * s.u[m] - 4.0 * s.u[m - 1] + s.u[m - 2]) * m / (2.0 * s.h);
  take_snapshots();
  if (record(-p.mu * initial_flux)) {
    res.termination = Termination::Stopped;
    res.final_state = s;
    return res;
  }

  for (long n = 1; n <= steps; ++n) {
    try {
      reaction_total += stepper.advance(s, dt);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DomainExhausted && opts.tolerate_domain_exhaustion) {
        res.termination = Termination::DomainExhausted;
        break;
      }
      throw;
    }
    s.t = static_cast<double>(n) * dt;
    check_bounds(s, res.audit);
    res.audit.observe(s, s.h - s.h_prev);
    take_snapshots();
    if (n % g.output_stride == 0 || n == steps) {
      if (record((s.h - s.h_prev) / dt)) {
        res.termination = Termination::Stopped;
        break;
      }
    }
  }
  if (res.termination == Termination::DomainExhausted &&
      res.trajectory.records.back().t < s.t) {
    record((s.h - s.h_prev) / dt);
  }
  res.final_state = s;
  return res;
}

std::vector<MassBalanceSample> mass_balance_residual(const Trajectory& traj,
                                                     const ModelParams& p) {
  if (!(p.mu > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "mass balance needs mu > 0");
  }
  std::vector<MassBalanceSample> out;
  const auto& rec = traj.records;
  const int n = p.dim;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    const double span = rec[k].t - rec[k - 1].t;
    if (!(span > 0.0)) continue;
    const double dmass = rec[k].mass_u - rec[k - 1].mass_u;
    const double boundary =
        p.d1 / (n * p.mu) * (std::pow(rec[k].h, n) - std::pow(rec[k - 1].h, n));
    const double reaction = rec[k].reaction_integral - rec[k - 1].reaction_integral;
    out.push_back({0.5 * (rec[k].t + rec[k - 1].t), (dmass + boundary - reaction) / span});
  }
  return out;
}

}  // namespace lvfb
