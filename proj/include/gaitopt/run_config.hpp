#pragma once

#include <cstdint>
#include <string>

#include "gaitopt/ga.hpp"
#include "gaitopt/nsga2.hpp"
#include "gaitopt/search_space.hpp"

namespace gaitopt {

/// Run-level configuration mirrored by the JSON config file. The walking
/// speed is given in km/h at this boundary and converted to m/s once.
struct RunConfig {
  std::string model_path;
  SearchSpace bounds;
  double speed_kmh = 0.5;
  double duration = 5.0;      // s
  double sample_rate = 240.0; // Hz
  double step_width = 0.2;    // m
  GaConfig ga;
  Nsga2Config nsga2;
  std::uint64_t seed = 0;
  bool has_seed = false;      // seeds are always explicit, never time-based
  std::string out_dir = "out";
  int workers = 0;            // 0 = all available cores

  double speed_mps() const { return speed_kmh / 3.6; }
  void validate() const;      // throws std::invalid_argument
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace gaitopt
