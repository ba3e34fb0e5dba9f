#include "lvfb/scenario.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "lvfb/error.hpp"

#ifndef LVFB_VERSION
#define LVFB_VERSION "0.0.0-dev"
#endif

namespace lvfb {

std::vector<double> SweepAxis::values() const {
  if (count < 1) throw Error(ErrorCode::ConfigError, "sweep axis '" + param + "' needs count >= 1");
  if (count == 1) return {min};
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[i] = i == count - 1 ? max : min + (max - min) * i / (count - 1);
  }
  return out;
}

double Scenario::resolved_amplitude() const {
  return amplitude ? *amplitude : 0.5 * params.u_capacity();
}

double Scenario::resolved_v_level() const { return v_level ? *v_level : params.v_capacity(); }

InitialData Scenario::initial_data() const {
  return parabolic_initial_data(params, resolved_amplitude(), resolved_v_level());
}

std::vector<std::string> builtin_scenario_names() {
  return {"superior-baseline", "inferior-baseline", "scalar-logistic"};
}

Scenario builtin_scenario(std::string_view name) {
  Scenario s;
  s.name = std::string(name);
  if (name == "superior-baseline") {
    s.params.mu = 4.0;
    s.grid = {256, 1500, 150.0, 0.005, 30.0, 20};
  } else if (name == "inferior-baseline") {
    s.params.a1 = 1.0;
    s.params.a2 = 3.0;
    s.params.mu = 2.0;
    s.grid = {256, 400, 20.0, 0.005, 40.0, 20};
  } else if (name == "scalar-logistic") {
    // v starts at zero and stays there; c1 = 0 detaches u from it anyway.
    s.params.a1 = 1.0;
    s.params.a2 = 0.5;
    s.params.c1 = 0.0;
    s.params.h0 = 1.0;
    s.params.mu = 10.0;
    s.v_level = 0.0;
    s.grid = {256, 200, 100.0, 0.01, 50.0, 20};
  } else {
    std::string known;
    for (const auto& n : builtin_scenario_names()) known += (known.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::ConfigError,
                "unknown scenario '" + std::string(name) + "' (known: " + known + ")");
  }
  return s;
}

namespace {

struct ModelField {
  const char* key;
  double ModelParams::*member;
};

constexpr ModelField kModelFields[] = {
    {"d1", &ModelParams::d1}, {"d2", &ModelParams::d2}, {"a1", &ModelParams::a1},
    {"a2", &ModelParams::a2}, {"b1", &ModelParams::b1}, {"b2", &ModelParams::b2},
    {"c1", &ModelParams::c1}, {"c2", &ModelParams::c2}, {"mu", &ModelParams::mu},
    {"h0", &ModelParams::h0},
};

}  // namespace

void set_model_field(ModelParams& p, std::string_view key, double value) {
  if (key == "dim") {
    if (value != static_cast<int>(value)) {
      throw Error(ErrorCode::ConfigError, "key 'dim' must be an integer");
    }
    p.dim = static_cast<int>(value);
    return;
  }
  for (const auto& f : kModelFields) {
    if (key == f.key) {
      p.*f.member = value;
      return;
    }
  }
  throw Error(ErrorCode::ConfigError, "unknown model parameter '" + std::string(key) + "'");
}

double get_model_field(const ModelParams& p, std::string_view key) {
  if (key == "dim") return p.dim;
  for (const auto& f : kModelFields) {
    if (key == f.key) return p.*f.member;
  }
  throw Error(ErrorCode::ConfigError, "unknown model parameter '" + std::string(key) + "'");
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const char* version_string() { return LVFB_VERSION; }

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line;
};

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(const Entry& e, const std::string& what) const {
    throw Error(ErrorCode::ConfigError, std::string(source_) + ":" + std::to_string(e.line) +
                                            ": key '" + e.key + "' in [" + e.section +
                                            "]: " + what);
  }

  double number(const Entry& e) const {
    double x = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, x);
    if (e.value.empty() || res.ec != std::errc() || res.ptr != last) {
      fail(e, "expected a number, got '" + e.value + "'");
    }
    return x;
  }

  int integer(const Entry& e) const {
    int x = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto res = std::from_chars(first, last, x);
    if (e.value.empty() || res.ec != std::errc() || res.ptr != last) {
      fail(e, "expected an integer, got '" + e.value + "'");
    }
    return x;
  }

  std::vector<double> list(const Entry& e) const {
    std::vector<double> out;
    std::string_view rest = e.value;
    while (!trim(rest).empty()) {
      const auto comma = rest.find(',');
      Entry item = e;
      item.value = std::string(trim(rest.substr(0, comma)));
      out.push_back(number(item));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    return out;
  }

  void apply(Scenario& s, const Entry& e, std::optional<SweepAxis>& ax1,
             std::optional<SweepAxis>& ax2) const {
    const auto& sec = e.section;
    const auto& k = e.key;
    if (sec == "scenario") {
      if (k == "name") {
        s.name = e.value;
      } else if (k != "base") {
        fail(e, "unknown key");
      }
    } else if (sec == "model") {
      if (k == "dim") {
        s.params.dim = integer(e);
        return;
      }
      for (const auto& f : kModelFields) {
        if (k == f.key) {
          s.params.*f.member = number(e);
          return;
        }
      }
      fail(e, "unknown key");
    } else if (sec == "initial") {
      if (k == "amplitude") {
        s.amplitude = number(e);
      } else if (k == "v_level") {
        s.v_level = number(e);
      } else {
        fail(e, "unknown key");
      }
    } else if (sec == "grid") {
      if (k == "m_u") s.grid.m_u = integer(e);
      else if (k == "m_v") s.grid.m_v = integer(e);
      else if (k == "L_v") s.grid.L_v = number(e);
      else if (k == "dt") s.grid.dt = number(e);
      else if (k == "t_end") s.grid.t_end = number(e);
      else if (k == "output_stride") s.grid.output_stride = integer(e);
      else fail(e, "unknown key");
    } else if (sec == "output") {
      if (k == "dir") s.out_dir = e.value;
      else if (k == "snapshots") s.snapshot_times = list(e);
      else fail(e, "unknown key");
    } else if (sec == "threshold") {
      if (k == "mu_lo") s.threshold.mu_lo = number(e);
      else if (k == "mu_hi") s.threshold.mu_hi = number(e);
      else if (k == "rel_tol") s.threshold.rel_tol = number(e);
      else if (k == "horizon_cap_factor") s.threshold.horizon_cap_factor = number(e);
      else fail(e, "unknown key");
    } else if (sec == "sweep") {
      if (k.size() < 2 || (k.back() != '1' && k.back() != '2')) fail(e, "unknown key");
      auto& ax = k.back() == '1' ? ax1 : ax2;
      if (!ax) ax.emplace();
      const std::string stem = k.substr(0, k.size() - 1);
      if (stem == "param") {
        try {
          get_model_field(ModelParams{}, e.value);
        } catch (const Error&) {
          fail(e, "unknown model parameter '" + e.value + "'");
        }
        ax->param = e.value;
      } else if (stem == "min") {
        ax->min = number(e);
      } else if (stem == "max") {
        ax->max = number(e);
      } else if (stem == "count") {
        ax->count = integer(e);
      } else {
        fail(e, "unknown key");
      }
    } else if (sec == "run") {
      // Manifest bookkeeping; accepted so a manifest replays as a config.
      if (k != "command" && k != "version") fail(e, "unknown key");
    } else {
      fail(e, "unknown section");
    }
  }

 private:
  std::string_view source_;
};

}  // namespace

Scenario parse_scenario(std::istream& is, std::string_view source) {
  Parser parser(source);
  std::vector<Entry> entries;
  std::map<std::pair<std::string, std::string>, int> seen;
  std::string section;
  std::string raw;
  int line_no = 0;
  auto fail_line = [&](const std::string& what) {
    throw Error(ErrorCode::ConfigError,
                std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(is, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail_line("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail_line("expected 'key = value', got '" + raw + "'");
    Entry e{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))),
            line_no};
    if (e.key.empty()) fail_line("missing key before '='");
    if (section.empty()) parser.fail(e, "key outside any section");
    const auto [it, fresh] = seen.emplace(std::pair{e.section, e.key}, line_no);
    if (!fresh) parser.fail(e, "duplicate key (first set on line " + std::to_string(it->second) + ")");
    entries.push_back(std::move(e));
  }

  Scenario s;
  for (const auto& e : entries) {
    if (e.section == "scenario" && e.key == "base") {
      try {
        s = builtin_scenario(e.value);
      } catch (const Error& err) {
        parser.fail(e, err.what());
      }
    }
  }
  std::optional<SweepAxis> ax1 = s.sweep1;
  std::optional<SweepAxis> ax2 = s.sweep2;
  for (const auto& e : entries) parser.apply(s, e, ax1, ax2);
  for (auto* ax : {&ax1, &ax2}) {
    if (*ax && (*ax)->param.empty()) {
      throw Error(ErrorCode::ConfigError,
                  std::string(source) + ": [sweep] axis given without param" +
                      (ax == &ax1 ? "1" : "2"));
    }
  }
  s.sweep1 = ax1;
  s.sweep2 = ax2;
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config '" + path + "'");
  return parse_scenario(in, path);
}

void write_scenario(std::ostream& os, const Scenario& s) {
  const auto& p = s.params;
  os << "[scenario]\nname = " << s.name << "\n\n[model]\n";
  for (const auto& f : kModelFields) os << f.key << " = " << format_double(p.*f.member) << '\n';
  os << "dim = " << p.dim << "\n\n";
  if (s.amplitude || s.v_level) {
    os << "[initial]\n";
    if (s.amplitude) os << "amplitude = " << format_double(*s.amplitude) << '\n';
    if (s.v_level) os << "v_level = " << format_double(*s.v_level) << '\n';
    os << '\n';
  }
  const auto& g = s.grid;
  os << "[grid]\nm_u = " << g.m_u << "\nm_v = " << g.m_v << "\nL_v = " << format_double(g.L_v)
     << "\ndt = " << format_double(g.dt) << "\nt_end = " << format_double(g.t_end)
     << "\noutput_stride = " << g.output_stride << "\n\n";
  os << "[output]\ndir = " << s.out_dir << '\n';
  if (!s.snapshot_times.empty()) {
    os << "snapshots = ";
    for (std::size_t i = 0; i < s.snapshot_times.size(); ++i) {
      os << (i ? ", " : "") << format_double(s.snapshot_times[i]);
    }
    os << '\n';
  }
  const auto& th = s.threshold;
  os << "\n[threshold]\nmu_lo = " << format_double(th.mu_lo)
     << "\nmu_hi = " << format_double(th.mu_hi) << "\nrel_tol = " << format_double(th.rel_tol)
     << "\nhorizon_cap_factor = " << format_double(th.horizon_cap_factor) << '\n';
  if (s.sweep1 || s.sweep2) {
    os << "\n[sweep]\n";
    int idx = 1;
    for (const auto* ax : {&s.sweep1, &s.sweep2}) {
      if (*ax) {
        const auto& a = **ax;
        os << "param" << idx << " = " << a.param << "\nmin" << idx << " = "
           << format_double(a.min) << "\nmax" << idx << " = " << format_double(a.max)
           << "\ncount" << idx << " = " << a.count << '\n';
      }
      ++idx;
    }
  }
}

void write_manifest(std::ostream& os, const Scenario& s, std::string_view command) {
  os << "# resolved run parameters; replayable with --config\n[run]\ncommand = " << command
     << "\nversion = " << version_string() << "\n\n";
  write_scenario(os, s);
}

bool operator==(const SweepAxis& a, const SweepAxis& b) {
  return a.param == b.param && a.min == b.min && a.max == b.max && a.count == b.count;
}

bool operator==(const Scenario& a, const Scenario& b) {
  const auto& p = a.params;
  const auto& q = b.params;
  const bool model = p.d1 == q.d1 && p.d2 == q.d2 && p.a1 == q.a1 && p.a2 == q.a2 &&
                     p.b1 == q.b1 && p.b2 == q.b2 && p.c1 == q.c1 && p.c2 == q.c2 &&
                     p.mu == q.mu && p.h0 == q.h0 && p.dim == q.dim;
  const auto& g = a.grid;
  const auto& h = b.grid;
  const bool grid = g.m_u == h.m_u && g.m_v == h.m_v && g.L_v == h.L_v && g.dt == h.dt &&
                    g.t_end == h.t_end && g.output_stride == h.output_stride;
  const auto& s = a.threshold;
  const auto& t = b.threshold;
  const bool thr = s.mu_lo == t.mu_lo && s.mu_hi == t.mu_hi && s.rel_tol == t.rel_tol &&
                   s.horizon_cap_factor == t.horizon_cap_factor;
  return a.name == b.name && model && a.amplitude == b.amplitude && a.v_level == b.v_level &&
         grid && a.out_dir == b.out_dir && a.snapshot_times == b.snapshot_times && thr &&
         a.sweep1 == b.sweep1 && a.sweep2 == b.sweep2;
}

}  // namespace lvfb
