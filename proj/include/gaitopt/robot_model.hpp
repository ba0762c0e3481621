#pragma once

#include <array>
#include <string>
#include <vector>

#include "gaitopt/chain.hpp"
#include "gaitopt/types.hpp"

namespace gaitopt {

struct LinkSpec {
  std::string name;
  double mass = 0.0;               // kg
  Vec3 com_offset = Vec3::Zero();  // link frame, m
  Mat3 inertia = Mat3::Zero();     // about the link CoM, kg m^2
};

struct JointSpec {
  std::string name, parent, child;
  Vec3 axis = Vec3::UnitZ();   // unit vector, parent frame
  Vec3 origin = Vec3::Zero();  // parent frame, m
  double min_angle = 0.0, max_angle = 0.0;  // rad
  double torque_limit = 0.0;   // N m
  double velocity_limit = 0.0; // rad/s
};

struct LegGeometry {
  Vec3 hip_offset = Vec3::Zero();  // pelvis -> left hip; right leg mirrors y
  double thigh_length = 0.0;
  double shank_length = 0.0;
  double ankle_height = 0.0;       // ankle joint above the sole
};

/// Model validation failure; the message names the offending field.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 12-DOF lower-limb model: a pelvis root carrying two serial legs with the
/// conventional yaw-roll-pitch hip, pitch knee and pitch-roll ankle.
struct RobotModel {
  static constexpr int kJointsPerLeg = 6;
  static constexpr int kNumJoints = 12;

  std::string name;
  std::vector<LinkSpec> links;    // pelvis first, then left leg, then right leg
  std::vector<JointSpec> joints;  // left leg 0..5, right leg 6..11, hip to ankle
  LegGeometry leg;
  std::array<Vec2, 4> sole_vertices{};  // foot frame, counterclockwise

  // Derived at load time.
  std::array<int, kNumJoints> joint_child_link{};  // joint -> links index
  std::array<ChainLink, kJointsPerLeg> left_chain{}, right_chain{};
  double total_mass_ = 0.0;

  double total_mass() const { return total_mass_; }
  Vec3 hip_offset(Side side) const {
    Vec3 o = leg.hip_offset;
    if (side == Side::Right) o.y() = -o.y();
    return o;
  }
  const std::array<ChainLink, kJointsPerLeg>& chain(Side side) const {
    return side == Side::Left ? left_chain : right_chain;
  }
  int link_index(const std::string& link_name) const;
  int joint_base(Side side) const { return side == Side::Left ? 0 : kJointsPerLeg; }
};

/// Parses and validates a model document (JSON). Throws ModelError naming the
/// offending field on any invariant violation.
RobotModel load_model(const std::string& json_text);
RobotModel load_model_file(const std::string& path);

}  // namespace gaitopt
