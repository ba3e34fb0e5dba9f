#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "lvfb/fbsolver.hpp"
#include "lvfb/model.hpp"

namespace lvfb::testing {

inline ModelParams superior() { return ModelParams{}; }

inline ModelParams inferior() {
  ModelParams p;
  p.a1 = 1.0;
  p.a2 = 3.0;
  p.mu = 2.0;
  return p;
}

// Small grid for tests that only need qualitative behaviour.
inline GridSpec coarse_grid(double t_end = 5.0) {
  GridSpec g;
  g.m_u = 64;
  g.m_v = 200;
  g.L_v = 20.0;
  g.dt = 0.01;
  g.t_end = t_end;
  g.output_stride = 10;
  return g;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("lvfb_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace lvfb::testing
