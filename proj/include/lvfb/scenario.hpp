#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lvfb/fbsolver.hpp"
#include "lvfb/model.hpp"

namespace lvfb {

/// Axis of a parameter sweep: `count` evenly spaced values of one model
/// field from `min` to `max` inclusive.
struct SweepAxis {
  std::string param;
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  std::vector<double> values() const;
};

struct ThresholdSpec {
  double mu_lo = 0.01;
  double mu_hi = 20.0;
  double rel_tol = 0.01;
  double horizon_cap_factor = 8.0;
};

/// Everything one invocation needs.  `amplitude` and `v_level` fall back to
/// a1/(2 b1) and a2/c2 when unset.
struct Scenario {
  std::string name = "custom";
  ModelParams params;
  std::optional<double> amplitude;
  std::optional<double> v_level;
  GridSpec grid;
  std::string out_dir = "out";
  std::vector<double> snapshot_times;
  ThresholdSpec threshold;
  std::optional<SweepAxis> sweep1;
  std::optional<SweepAxis> sweep2;

  InitialData initial_data() const;
  double resolved_amplitude() const;
  double resolved_v_level() const;
};

std::vector<std::string> builtin_scenario_names();

/// Throws ConfigError for unknown names.
Scenario builtin_scenario(std::string_view name);

/// Sets a model field (d1 ... c2, mu, h0, dim) by name.  Throws ConfigError.
void set_model_field(ModelParams& p, std::string_view key, double value);
double get_model_field(const ModelParams& p, std::string_view key);

/// Sectioned key = value text.  `[scenario] base = <builtin>` seeds the
/// remaining keys.  Errors carry the line number and key.
Scenario parse_scenario(std::istream& is, std::string_view source = "<config>");
Scenario load_scenario(const std::string& path);

/// Writes every resolved field; parse_scenario(write_scenario(s)) == s.
void write_scenario(std::ostream& os, const Scenario& s);

/// Shortest decimal that reads back to the same double.
std::string format_double(double x);

const char* version_string();

/// Scenario plus the command and code version, in the config format.
void write_manifest(std::ostream& os, const Scenario& s, std::string_view command);

bool operator==(const SweepAxis& a, const SweepAxis& b);
bool operator==(const Scenario& a, const Scenario& b);

}  // namespace lvfb
