#pragma once

#include <array>
#include <span>
#include <vector>

#include "gaitopt/chain.hpp"
#include "gaitopt/kinematics.hpp"
#include "gaitopt/robot_model.hpp"

namespace gaitopt {

/// Prescribed pelvis motion; orientation is held level (identity rotation,
/// zero angular velocity/acceleration).
struct PelvisMotion {
  Vec3 pos = Vec3::Zero();
  Vec3 vel = Vec3::Zero();
  Vec3 acc = Vec3::Zero();
};

/// Ground-reaction force fraction carried by each foot; shares sum to 1.
struct GrfShare {
  double left = 0.0;
  double right = 0.0;
};

/// World kinematic state of every model link (pelvis plus both legs),
/// aligned with model.links. Accelerations are true accelerations.
struct BipedLinkStates {
  std::vector<LinkMotion> links;
  Vec3 whole_body_com = Vec3::Zero();
};

BipedLinkStates biped_link_states(const RobotModel& model, const PelvisMotion& pelvis,
                                  const JointState& joints);

/// Recursive Newton-Euler inverse dynamics over both legs. The total ground
/// reaction wrench balances the whole model and is split over the feet by
/// grf_share (forced to 1/0 in single support).
std::array<double, RobotModel::kNumJoints> inverse_dynamics(
    const RobotModel& model, const PelvisMotion& pelvis, const JointState& joints,
    Stance stance, const GrfShare& share, double gravity = kGravity);

/// Same computation on precomputed link states (shared with the evaluator).
std::array<double, RobotModel::kNumJoints> inverse_dynamics_from_states(
    const RobotModel& model, const BipedLinkStates& states, const GrfShare& share,
    double gravity = kGravity);

/// Thrown when the vertical support force vanishes (free fall).
class DegenerateDynamicsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Zero-moment point from per-body momenta: masses, CoM positions, CoM
/// accelerations and angular momentum rates about each body's own CoM.
Vec2 zmp_from_momenta(std::span<const double> mass, std::span<const Vec3> com,
                      std::span<const Vec3> com_acc, std::span<const Vec3> ang_mom_rate,
                      double gravity = kGravity);

/// Full-model ZMP from the link states of the biped.
Vec2 zmp_full_model(const RobotModel& model, const BipedLinkStates& states,
                    double gravity = kGravity);

}  // namespace gaitopt
