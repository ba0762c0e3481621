#pragma once

#include <array>

#include "gaitopt/types.hpp"

namespace gaitopt {

using Genome = std::array<double, 5>;  // alpha, r_ds, t_step, z0, h_ankle

struct ParamRange {
  double min = 0.0;
  double max = 1.0;
};

/// Box bounds of the five gait parameters. Defaults are the reference search
/// region used throughout: alpha 0.2-0.7, r_ds 0.1-0.5, t_step 0.5-1.3 s,
/// z0 0.65-0.7 m, h_ankle 0.025-0.075 m.
struct SearchSpace {
  ParamRange alpha{0.2, 0.7};
  ParamRange r_ds{0.1, 0.5};
  ParamRange t_step{0.5, 1.3};
  ParamRange z0{0.65, 0.7};
  ParamRange h_ankle{0.025, 0.075};

  std::array<ParamRange, 5> ranges() const { return {alpha, r_ds, t_step, z0, h_ankle}; }
  static const std::array<const char*, 5>& names();

  void validate() const;  // throws std::invalid_argument when min >= max
  bool contains(const Genome& g) const;
  Genome clamp(Genome g) const;
};

GaitParams to_params(const Genome& g, double speed);
Genome to_genome(const GaitParams& p);

}  // namespace gaitopt
