#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gaitopt/dynamics.hpp"
#include "gaitopt/gait.hpp"
#include "gaitopt/polygon.hpp"

namespace gaitopt {

enum class Constraint { JointRange, TorqueLimit, ComHeight, KinematicReach };

const char* to_string(Constraint c);

struct Violation {
  Constraint constraint = Constraint::JointRange;
  double worst = 0.0;  // most extreme offending value
  int sample = -1;
  std::string detail;
};

/// Accumulated costs of one evaluated candidate over the walk window.
struct CostVector {
  double j_energy = 0.0;  // J, sum of |tau * qd| dt over joints and samples
  double j_torque = 0.0;  // N m, sum of |tau|
  double j_vel = 0.0;     // rad/s, sum of |qd|
  double j_zmp = 0.0;     // m, signed distance sum (negative inside)
  bool feasible = true;
  std::vector<Violation> violations;
};

/// Flags joint angles outside their limits, torques above their limits, and
/// whole-body CoM heights below the fall threshold 0.8 * z0. One entry per
/// violated constraint kind, carrying the worst value and its sample.
std::vector<Violation> check_constraints(
    const RobotModel& model, std::span<const JointState> joints,
    std::span<const std::array<double, RobotModel::kNumJoints>> taus,
    std::span<const double> com_z, double z0);

/// Optional per-sample dynamics record for CSV dumps.
struct DynamicsTrace {
  struct Row {
    double t = 0.0;
    std::array<double, RobotModel::kNumJoints> tau{};
    Vec2 zmp = Vec2::Zero();
    bool inside = false;
    double signed_distance = 0.0;
  };
  std::vector<Row> rows;
};

void write_dynamics_csv(std::ostream& os, const DynamicsTrace& trace);

/// Full evaluation of an already generated trajectory: joint IK, inverse
/// dynamics, full-model ZMP and support-polygon tests, accumulated into the
/// four costs. Constraint breaches and IK failures mark the result
/// infeasible; they never throw.
CostVector evaluate_trajectory(const RobotModel& model, const GaitTrajectory& gait,
                               DynamicsTrace* trace = nullptr);

/// Generates the gait for the given parameters and evaluates it.
CostVector evaluate_gait(const RobotModel& model, const GaitParams& params,
                         double duration = 5.0, double sample_rate = 240.0,
                         double step_width = 0.2, DynamicsTrace* trace = nullptr);

}  // namespace gaitopt
