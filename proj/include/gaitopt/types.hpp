#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaitopt {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kGravity = 9.81;  // m/s^2

enum class Side { Left, Right };
enum class Phase { SingleSupport, DoubleSupport };
enum class Stance { Left, Right, Both };

inline Side other(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

const char* to_string(Side s);
const char* to_string(Phase p);
const char* to_string(Stance s);
Phase phase_from_string(const std::string& s);
Stance stance_from_string(const std::string& s);

/// Rigid transform: rotation plus translation, world frame.
struct Pose {
  Mat3 R = Mat3::Identity();
  Vec3 p = Vec3::Zero();
};

/// The five gait parameters plus the fixed walking speed.
///
/// alpha splits the double-support interval before/after the instantaneous
/// support transition; r_ds is the double-support fraction of one step;
/// z0 is the constant pelvis/CoM height of the pendulum model.
struct GaitParams {
  double alpha = 0.5;
  double r_ds = 0.2;
  double t_step = 1.0;    // s
  double z0 = 0.68;       // m
  double h_ankle = 0.04;  // m, swing apex height
  double speed = 0.0;     // m/s, constant for the whole run

  double omega() const { return std::sqrt(kGravity / z0); }
  double t_ds() const { return r_ds * t_step; }
  double t_ss() const { return t_step - t_ds(); }
  double dt_init_ds() const { return alpha * t_ds(); }
  double dt_end_ds() const { return (1.0 - alpha) * t_ds(); }

  /// Throws std::invalid_argument naming the offending parameter.
  void validate() const;
};

}  // namespace gaitopt
