#pragma once

#include <span>
#include <vector>

#include "gaitopt/types.hpp"

namespace gaitopt {

/// One revolute link of a serial chain: joint origin and axis in the parent
/// frame, inertial properties in the link frame.
struct ChainLink {
  Vec3 origin = Vec3::Zero();
  Vec3 axis = Vec3::UnitZ();
  double mass = 0.0;
  Vec3 com_offset = Vec3::Zero();
  Mat3 inertia = Mat3::Zero();  // about the link CoM
};

/// World-frame motion of one rigid body, tracked at a reference point p.
struct BodyMotion {
  Vec3 p = Vec3::Zero();
  Mat3 R = Mat3::Identity();
  Vec3 v = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 a = Vec3::Zero();      // true acceleration, no gravity offset
  Vec3 alpha = Vec3::Zero();
};

/// Motion of one chain link plus its CoM kinematics and world joint axis.
struct LinkMotion {
  BodyMotion frame;  // at the joint
  Vec3 axis_w = Vec3::UnitZ();
  Vec3 com = Vec3::Zero();
  Vec3 com_vel = Vec3::Zero();
  Vec3 com_acc = Vec3::Zero();
};

/// Outward velocity/acceleration propagation from the base body.
void chain_outward(std::span<const ChainLink> chain, const BodyMotion& base,
                   std::span<const double> q, std::span<const double> qd,
                   std::span<const double> qdd, std::span<LinkMotion> out);

/// External wrench: a force plus a moment taken about the world origin.
struct Wrench {
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
};

/// Inward Newton-Euler recursion over one chain; the external wrench acts on
/// the tip link (ground reaction on a foot). Returns one torque per joint.
void chain_inward(std::span<const ChainLink> chain, std::span<const LinkMotion> motions,
                  const Wrench& external_on_tip, double gravity, std::span<double> tau);

}  // namespace gaitopt
