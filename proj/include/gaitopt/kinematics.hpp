#pragma once

#include <array>
#include <string>
#include <vector>

#include "gaitopt/gait.hpp"
#include "gaitopt/robot_model.hpp"

namespace gaitopt {

struct JointState {
  std::array<double, RobotModel::kNumJoints> q{}, qd{}, qdd{};
};

struct FkResult {
  std::vector<Pose> link_pose;  // aligned with model.links
  std::vector<Vec3> link_com;   // world
  Vec3 whole_body_com = Vec3::Zero();
};

FkResult forward_kinematics(const RobotModel& model, const Pose& pelvis,
                            const std::array<double, RobotModel::kNumJoints>& q);

/// Thrown when a foot target lies outside the leg workspace.
class ReachError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Analytic geometric IK for one 6-DOF leg, knee-forward branch (knee >= 0).
/// foot_sole is the sole frame; the ankle sits ankle_height above it. Targets
/// within 1e-6 m of full extension are clamped onto the reachable sphere;
/// farther targets throw ReachError.
std::array<double, RobotModel::kJointsPerLeg> leg_ik(const RobotModel& model,
                                                     const Pose& pelvis,
                                                     const Pose& foot_sole, Side side);

struct JointTrajectory {
  std::vector<JointState> samples;
  bool feasible = true;
  int failed_sample = -1;
  std::string failure;
};

/// Per-sample leg IK along a gait with the pelvis placed at the planned CoM
/// point; qd and qdd by central differences at the trajectory sample rate
/// (one-sided at the ends). An unreachable sample marks the result infeasible
/// instead of throwing.
JointTrajectory joint_trajectory(const RobotModel& model, const GaitTrajectory& gait);

}  // namespace gaitopt
