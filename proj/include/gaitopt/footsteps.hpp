#pragma once

#include <vector>

#include "gaitopt/types.hpp"

namespace gaitopt {

struct Footstep {
  Vec2 position = Vec2::Zero();  // footprint center, world
  Side side = Side::Left;
  Vec2 zmp_ref = Vec2::Zero();   // ZMP reference, at the footprint center
};

/// Straight-line footstep sequence. The first two and last two footprints
/// share an x position (stationary double stances); interior footprints
/// advance by one step length and alternate sides.
struct FootstepPlan {
  std::vector<Footstep> steps;
  double step_width = 0.0;   // m, lateral center-to-center distance
  double step_length = 0.0;  // m, speed * t_step
};

/// Plans ceil(duration / t_step) + 2 footprints for a straight walk.
FootstepPlan plan_footsteps(double speed, double t_step, double step_width, double duration);

}  // namespace gaitopt
