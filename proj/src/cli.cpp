#include "lvfb/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "lvfb/analysis.hpp"
#include "lvfb/eigen.hpp"
#include "lvfb/model.hpp"
#include "lvfb/scenario.hpp"
#include "lvfb/semiwave.hpp"
#include "lvfb/sweep.hpp"

namespace fs = std::filesystem;

namespace lvfb {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BoundaryRegime:
      return kExitConfig;
    case ErrorCode::HorizonExhausted:
      return kExitInconclusive;
    default:
      return kExitSolver;
  }
}

namespace {

struct CommonFlags {
  std::string config;
  std::string scenario;
  std::optional<double> mu;
  std::optional<double> h0;
  std::optional<double> horizon;
  std::string out;
  int workers = 1;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--config", f.config, "scenario config file");
  sub->add_option("--scenario", f.scenario, "built-in scenario name");
  sub->add_option("--mu", f.mu, "override the Stefan coefficient");
  sub->add_option("--h0", f.h0, "override the initial front radius");
  sub->add_option("--horizon", f.horizon, "override t_end");
  sub->add_option("--out", f.out, "output directory");
}

Scenario resolve(const CommonFlags& f) {
  if (!f.config.empty() && !f.scenario.empty()) {
    throw Error(ErrorCode::ConfigError, "--config and --scenario are mutually exclusive");
  }
  Scenario s = !f.config.empty()
                   ? load_scenario(f.config)
                   : builtin_scenario(f.scenario.empty() ? "superior-baseline" : f.scenario);
  if (f.mu) s.params.mu = *f.mu;
  if (f.h0) s.params.h0 = *f.h0;
  if (f.horizon) s.grid.t_end = *f.horizon;
  if (!f.out.empty()) s.out_dir = f.out;
  s.params.validate();
  s.grid.validate(s.params);
  return s;
}

fs::path prepare_dir(const Scenario& s) {
  const fs::path dir(s.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::ConfigError, "cannot create output dir '" + s.out_dir + "'");
  return dir;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::ConfigError, "cannot write '" + path.string() + "'");
  return os;
}

void write_manifest_file(const fs::path& dir, const Scenario& s, std::string_view command) {
  auto os = open_out(dir / "manifest.txt");
  write_manifest(os, s, command);
}

void write_snapshot(const fs::path& dir, const Snapshot& snap) {
  auto os = open_out(dir / ("snapshot_t" + format_double(snap.requested_t) + ".csv"));
  const SolverState& st = snap.state;
  os << "r,u,v\n";
  os.precision(12);
  // u nodes inside the front, then v nodes beyond it.
  for (int j = 0; j < st.m_u(); ++j) {
    const double r = st.h * j / st.m_u();
    os << r << ',' << st.u[j] << ',' << st.v_at(r) << '\n';
  }
  os << st.h << ",0," << st.v_at(st.h) << '\n';
  for (int i = 0; i <= st.m_v(); ++i) {
    const double r = st.L_v * i / st.m_v();
    if (r > st.h) os << r << ",0," << st.v[i] << '\n';
  }
}

void write_audit(std::ostream& os, const InvariantAudit& a) {
  os << "[audit]\n"
     << "steps_checked = " << a.steps_checked << '\n'
     << "max_sup_u = " << format_double(a.max_sup_u) << " (bound " << format_double(a.bound_u)
     << ")\n"
     << "max_sup_v = " << format_double(a.max_sup_v) << " (bound " << format_double(a.bound_v)
     << ")\n"
     << "min_u = " << format_double(a.min_u) << '\n'
     << "min_v = " << format_double(a.min_v) << '\n'
     << "min_dh = " << format_double(a.min_dh) << '\n'
     << "violations = " << a.violations() << '\n';
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Completed: return "completed";
    case Termination::Stopped: return "stopped";
    case Termination::DomainExhausted: return "domain exhausted";
  }
  return "unknown";
}

int cmd_simulate(const CommonFlags& f, std::ostream& out) {
  const Scenario s = resolve(f);
  const Regime regime = classify_regime(s.params);
  InitialData init = s.initial_data();
  SimulateOptions opts;
  opts.tolerate_domain_exhaustion = true;
  opts.snapshot_times = s.snapshot_times;
  const SimulationResult run = simulate(s.params, init, s.grid, opts);

  const fs::path dir = prepare_dir(s);
  {
    auto os = open_out(dir / "trajectory.csv");
    write_trajectory_csv(os, run.trajectory);
  }
  for (const auto& snap : run.snapshots) write_snapshot(dir, snap);
  write_manifest_file(dir, s, "simulate");

  std::ostringstream sum;
  const auto& last = run.trajectory.records.back();
  sum << "[run]\nscenario = " << s.name << "\nregime = " << to_string(regime)
      << "\ntermination = " << to_string(run.termination) << "\nt_final = "
      << format_double(last.t) << "\nh_final = " << format_double(last.h) << "\n\n";
  if (regime == Regime::SuperiorU) {
    const ClassificationResult c = classify(run.trajectory, s.params);
    sum << "[classification]\nverdict = " << to_string(c.verdict)
        << "\ncriterion = " << c.criterion
        << "\nvanishing_bound = " << format_double(c.vanishing_bound)
        << "\nsup_u_final = " << format_double(c.sup_u_final) << '\n';
    if (c.verdict == Verdict::Spreading) {
      try {
        const SpeedEstimate e = estimate_speed(run.trajectory, s.params);
        sum << "c_hat = " << format_double(e.c_hat) << "\nspeed_lower = "
            << format_double(e.lower) << "\nspeed_upper = " << format_double(e.upper)
            << "\nspeed_within_bounds = " << (e.within_bounds ? "yes" : "no") << '\n';
      } catch (const Error& e) {
        sum << "c_hat = unavailable (" << e.what() << ")\n";
      }
    }
    sum << '\n';
  } else if (regime == Regime::InferiorU) {
    const InferiorReport r = inferior_longtime_check(run.trajectory, run.final_state, s.params);
    sum << "[inferior_check]\nresult = " << (r.passed ? "pass" : "fail")
        << "\nsup_u_final = " << format_double(r.sup_u_final)
        << "\nv_deviation = " << format_double(r.v_deviation)
        << "\nh_prime_trailing = " << format_double(r.h_prime_trailing)
        << "\ndiagnostics = " << r.diagnostics << "\n\n";
  } else {
    sum << "[classification]\nverdict = none (no classifier for " << to_string(regime)
        << ")\n\n";
  }
  write_audit(sum, run.audit);
  {
    auto os = open_out(dir / "summary.txt");
    os << sum.str();
  }
  out << sum.str();
  return kExitOk;
}

struct SemiwaveFlags {
  double a = 1.0;
  double b = 1.0;
  double d = 1.0;
  std::optional<double> mu;
  bool table = false;
  int n = 20;
  std::string out;
};

int cmd_semiwave(const SemiwaveFlags& f, std::ostream& out) {
  if (!(f.a > 0.0) || !(f.b > 0.0) || !(f.d > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "-a, -b and -d must be positive");
  }
  std::ostringstream csv;
  csv.precision(12);
  if (f.table) {
    if (f.n < 1) throw Error(ErrorCode::InvalidArgument, "-n must be at least 1");
    const double k_max = 2.0 * std::sqrt(f.a * f.d);
    csv << "k,slope0\n";
    for (int i = 0; i < f.n; ++i) {
      const double k = k_max * i / f.n;
      csv << k << ',' << semiwave_slope(f.a, f.b, f.d, k) << '\n';
    }
  } else if (f.mu) {
    if (!(*f.mu > 0.0)) throw Error(ErrorCode::InvalidArgument, "--mu must be positive");
    csv << "a,b,d,mu,k0\n"
        << f.a << ',' << f.b << ',' << f.d << ',' << *f.mu << ','
        << find_k0(*f.mu, f.a, f.b, f.d) << '\n';
  } else {
    throw Error(ErrorCode::InvalidArgument, "semiwave needs --mu or --table");
  }
  if (!f.out.empty()) {
    Scenario where;
    where.out_dir = f.out;
    auto os = open_out(prepare_dir(where) / "semiwave.csv");
    os << csv.str();
  }
  out << csv.str();
  return kExitOk;
}

struct ThresholdFlags {
  std::optional<double> mu_lo;
  std::optional<double> mu_hi;
};

int cmd_threshold(const CommonFlags& f, const ThresholdFlags& tf, std::ostream& out) {
  Scenario s = resolve(f);
  if (tf.mu_lo) s.threshold.mu_lo = *tf.mu_lo;
  if (tf.mu_hi) s.threshold.mu_hi = *tf.mu_hi;
  const fs::path dir = prepare_dir(s);
  write_manifest_file(dir, s, "threshold");

  ThresholdOptions opts;
  opts.rel_tol = s.threshold.rel_tol;
  opts.horizon_cap_factor = s.threshold.horizon_cap_factor;
  const ThresholdResult r = find_mu_star(s.params, s.initial_data(), s.threshold.mu_lo,
                                         s.threshold.mu_hi, s.grid, opts);
  {
    auto os = open_out(dir / "threshold_history.csv");
    os << "mu,verdict,horizon\n";
    for (const auto& p : r.history) {
      os << format_double(p.mu) << ',' << to_string(p.verdict) << ','
         << format_double(p.horizon) << '\n';
    }
  }
  std::ostringstream rep;
  rep << "[threshold]\nscenario = " << s.name << "\nh0 = " << format_double(s.params.h0)
      << "\nvanishing_bound = " << format_double(vanishing_bound(s.params));
  if (r.trivially_zero) {
    rep << "\nmu_star = 0\nnote = h0 at or above the vanishing bound; no simulations run\n";
  } else {
    rep << "\nmu_star = " << format_double(r.mu_star) << "\nbracket_lo = " << format_double(r.lo)
        << "\nbracket_hi = " << format_double(r.hi) << "\nwidth = " << format_double(r.width)
        << "\nrelative_width = " << format_double(r.width / r.mu_star)
        << "\nprobes = " << r.history.size() << '\n';
  }
  {
    auto os = open_out(dir / "threshold.txt");
    os << rep.str();
  }
  out << rep.str();
  return kExitOk;
}

SweepAxis parse_axis(const std::string& spec) {
  // param=min:max:count
  const auto eq = spec.find('=');
  const auto c1 = spec.find(':', eq);
  const auto c2 = c1 == std::string::npos ? c1 : spec.find(':', c1 + 1);
  if (eq == std::string::npos || c1 == std::string::npos || c2 == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "sweep axis '" + spec + "' is not param=min:max:count");
  }
  std::ostringstream cfg;
  cfg << "[sweep]\nparam1 = " << spec.substr(0, eq) << "\nmin1 = "
      << spec.substr(eq + 1, c1 - eq - 1) << "\nmax1 = " << spec.substr(c1 + 1, c2 - c1 - 1)
      << "\ncount1 = " << spec.substr(c2 + 1) << '\n';
  std::istringstream in(cfg.str());
  return *parse_scenario(in, "--sweep").sweep1;
}

struct SweepFlags {
  std::string axis1;
  std::string axis2;
};

int cmd_sweep(const CommonFlags& f, const SweepFlags& sf, std::ostream& out) {
  Scenario s = resolve(f);
  if (!sf.axis1.empty()) s.sweep1 = parse_axis(sf.axis1);
  if (!sf.axis2.empty()) s.sweep2 = parse_axis(sf.axis2);
  if (f.workers < 1) throw Error(ErrorCode::ConfigError, "--workers must be at least 1");
  if (!s.sweep1) throw Error(ErrorCode::ConfigError, "sweep needs --sweep1 or [sweep] param1");
  const fs::path dir = prepare_dir(s);
  write_manifest_file(dir, s, "sweep");
  const SweepResult r = run_sweep(s, f.workers);
  {
    auto os = open_out(dir / "phase.csv");
    write_phase_csv(os, r);
  }
  {
    auto os = open_out(dir / "phase_matrix.dat");
    write_phase_matrix(os, r);
  }
  int failed = 0;
  for (const auto& pt : r.points) failed += pt.error.empty() ? 0 : 1;
  out << "sweep: " << r.points.size() << " points, " << failed << " with errors; wrote "
      << (dir / "phase.csv").string() << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-species competition with a free boundary", "lvfb"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  CommonFlags sim_f;
  CLI::App* sim = app.add_subcommand("simulate", "run one scenario to its horizon");
  add_common(sim, sim_f);

  SemiwaveFlags sw_f;
  CLI::App* sw = app.add_subcommand("semiwave", "semi-wave slope table or k0");
  sw->add_option("-a", sw_f.a, "growth rate");
  sw->add_option("-b", sw_f.b, "self-limitation");
  sw->add_option("-d", sw_f.d, "diffusion");
  sw->add_option("--mu", sw_f.mu, "Stefan coefficient; prints k0");
  sw->add_flag("--table", sw_f.table, "print (k, slope0) over [0, 2 sqrt(ad))");
  sw->add_option("-n", sw_f.n, "table rows");
  sw->add_option("--out", sw_f.out, "also write semiwave.csv here");

  CommonFlags th_f;
  ThresholdFlags th_x;
  CLI::App* th = app.add_subcommand("threshold", "bisect for the spreading threshold mu*");
  add_common(th, th_f);
  th->add_option("--mu-lo", th_x.mu_lo, "lower bracket end (must vanish)");
  th->add_option("--mu-hi", th_x.mu_hi, "upper bracket end (must spread)");

  CommonFlags sp_f;
  SweepFlags sp_x;
  CLI::App* sp = app.add_subcommand("sweep", "phase diagram over one or two parameters");
  add_common(sp, sp_f);
  sp->add_option("--workers", sp_f.workers, "concurrent runs");
  sp->add_option("--sweep1", sp_x.axis1, "param=min:max:count");
  sp->add_option("--sweep2", sp_x.axis2, "param=min:max:count");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sim->parsed()) return cmd_simulate(sim_f, out);
    if (sw->parsed()) return cmd_semiwave(sw_f, out);
    if (th->parsed()) return cmd_threshold(th_f, th_x, out);
    if (sp->parsed()) return cmd_sweep(sp_f, sp_x, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitConfig;
}

}  // namespace lvfb
