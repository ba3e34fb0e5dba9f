#include "lvfb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "lvfb/error.hpp"

namespace lvfb {

PointOutcome run_and_classify(const Scenario& s) {
  s.params.validate();
  if (const Regime r = classify_regime(s.params); r != Regime::SuperiorU) {
    throw Error(ErrorCode::WrongRegime, "classification needs SuperiorU, got " +
                                            std::string(to_string(r)));
  }
  InitialData init = s.initial_data();
  SimulateOptions opts;
  opts.tolerate_domain_exhaustion = true;
  opts.snapshot_times = s.snapshot_times;
  PointOutcome out;
  out.run = simulate(s.params, init, s.grid, opts);
  out.classification = classify(out.run.trajectory, s.params);
  if (out.classification.verdict == Verdict::Spreading) {
    try {
      out.speed = estimate_speed(out.run.trajectory, s.params);
    } catch (const Error&) {
      // Spreading fired before the trailing window filled up.
    }
  }
  return out;
}

SweepResult run_sweep(const Scenario& s, int workers) {
  if (!s.sweep1) throw Error(ErrorCode::ConfigError, "sweep needs at least [sweep] param1");
  SweepResult res;
  res.axis1 = *s.sweep1;
  res.axis2 = s.sweep2;
  const auto v1 = res.axis1.values();
  const auto v2 = res.axis2 ? res.axis2->values() : std::vector<double>{};
  const std::size_t n2 = res.axis2 ? v2.size() : 1;
  res.points.resize(v1.size() * n2);
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      auto& pt = res.points[i * n2 + j];
      pt.param1 = v1[i];
      if (res.axis2) pt.param2 = v2[j];
    }
  }

  auto evaluate = [&](SweepPoint& pt) {
    try {
      Scenario local = s;
      set_model_field(local.params, res.axis1.param, pt.param1);
      if (pt.param2) set_model_field(local.params, res.axis2->param, *pt.param2);
      local.snapshot_times.clear();
      const PointOutcome o = run_and_classify(local);
      pt.verdict = std::string(to_string(o.classification.verdict));
      pt.h_final = o.classification.h_final;
      if (o.speed) pt.c_hat = o.speed->c_hat;
    } catch (const Error& e) {
      pt.verdict = std::string(to_string(e.code()));
      pt.error = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < res.points.size(); k = next++) evaluate(res.points[k]);
  };
  const int n_threads =
      std::max(1, std::min<int>(workers, static_cast<int>(res.points.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return res;
}

void write_phase_csv(std::ostream& os, const SweepResult& r) {
  os << "param1,param2,verdict,h_final,c_hat\n";
  for (const auto& pt : r.points) {
    os << format_double(pt.param1) << ',' << (pt.param2 ? format_double(*pt.param2) : "") << ','
       << pt.verdict << ',' << (pt.h_final ? format_double(*pt.h_final) : "") << ','
       << (pt.c_hat ? format_double(*pt.c_hat) : "") << '\n';
  }
}

void write_phase_matrix(std::ostream& os, const SweepResult& r) {
  auto code = [](const std::string& v) -> std::string {
    if (v == "Spreading") return "1";
    if (v == "Vanishing") return "0";
    if (v == "Undetermined") return "0.5";
    return "NaN";
  };
  const std::size_t n1 = r.axis1.values().size();
  const std::size_t n2 = r.points.size() / n1;
  // Columns run along axis1, rows along axis2.
  os << "# x = " << r.axis1.param << ", y = " << (r.axis2 ? r.axis2->param : "-")
     << "; 1 Spreading, 0 Vanishing, 0.5 Undetermined\n";
  os << n1;
  for (std::size_t i = 0; i < n1; ++i) os << ' ' << format_double(r.points[i * n2].param1);
  os << '\n';
  for (std::size_t j = 0; j < n2; ++j) {
    const auto& first = r.points[j];
    os << (first.param2 ? format_double(*first.param2) : "0");
    for (std::size_t i = 0; i < n1; ++i) os << ' ' << code(r.points[i * n2 + j].verdict);
    os << '\n';
  }
}

}  // namespace lvfb
