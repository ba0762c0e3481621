#pragma once

#include <iosfwd>
#include <vector>

#include "gaitopt/dcm.hpp"
#include "gaitopt/footsteps.hpp"
#include "gaitopt/types.hpp"

namespace gaitopt {

struct GaitSample {
  double t = 0.0;
  Vec2 dcm = Vec2::Zero();
  Vec2 dcm_vel = Vec2::Zero();
  Vec3 com = Vec3::Zero();
  Vec3 com_vel = Vec3::Zero();
  Vec3 left_ankle = Vec3::Zero();   // sole origin, z = 0 when flat on ground
  Vec3 right_ankle = Vec3::Zero();
  Phase phase = Phase::DoubleSupport;
  Stance stance = Stance::Both;
  double left_grf_share = 0.5;      // ground-reaction fraction on the left foot
};

/// Uniformly sampled task-space gait: DCM, CoM and both ankle trajectories.
struct GaitTrajectory {
  double sample_rate = 0.0;  // Hz
  std::vector<GaitSample> samples;
  GaitParams params;
  FootstepPlan plan;
};

/// Stitches footsteps, per-step DCM segments, double-support cubics, the CoM
/// integration and quintic ankle swings into one sampled trajectory.
/// Produces round(duration * sample_rate) samples starting at t = 0.
GaitTrajectory generate_gait(const GaitParams& params, double duration,
                             double step_width, double sample_rate);

/// One row per sample: t, dcm_x, dcm_y, com_x, com_y, com_z, com_vx, com_vy,
/// lankle_x..z, rankle_x..z, phase, stance. Numbers are rendered so that
/// parsing them back reproduces the doubles exactly.
void write_trajectory_csv(std::ostream& os, const GaitTrajectory& traj);

/// Parses the CSV written by write_trajectory_csv (CSV columns only; fields
/// that are not serialized stay default-initialized).
GaitTrajectory read_trajectory_csv(std::istream& is);

}  // namespace gaitopt
