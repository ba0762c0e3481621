#include "gaitopt/costs.hpp"

#include <ostream>

#include "gaitopt/csv.hpp"

namespace gaitopt {

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::JointRange: return "joint_range";
    case Constraint::TorqueLimit: return "torque_limit";
    case Constraint::ComHeight: return "com_height";
    default: return "kinematic_reach";
  }
}

std::vector<Violation> check_constraints(
    const RobotModel& model, std::span<const JointState> joints,
    std::span<const std::array<double, RobotModel::kNumJoints>> taus,
    std::span<const double> com_z, double z0) {
  Violation range{Constraint::JointRange, 0.0, -1, ""};
  Violation torque{Constraint::TorqueLimit, 0.0, -1, ""};
  Violation height{Constraint::ComHeight, 0.0, -1, ""};
  double worst_range = 0.0, worst_torque = 0.0, worst_height = 0.0;

  for (std::size_t k = 0; k < joints.size(); ++k) {
    for (int j = 0; j < RobotModel::kNumJoints; ++j) {
      const JointSpec& spec = model.joints[j];
      const double q = joints[k].q[j];
      const double over = std::max(spec.min_angle - q, q - spec.max_angle);
      if (over > worst_range) {
        worst_range = over;
        range.worst = q;
        range.sample = static_cast<int>(k);
        range.detail = spec.name;
      }
      if (k < taus.size()) {
        const double excess = std::abs(taus[k][j]) - spec.torque_limit;
        if (excess > worst_torque) {
          worst_torque = excess;
          torque.worst = taus[k][j];
          torque.sample = static_cast<int>(k);
          torque.detail = spec.name;
        }
      }
    }
    if (k < com_z.size()) {
      const double fall = 0.8 * z0;
      const double below = fall - com_z[k];
      if (below > worst_height) {
        worst_height = below;
        height.worst = com_z[k];
        height.sample = static_cast<int>(k);
        height.detail = "whole-body CoM height";
      }
    }
  }

  std::vector<Violation> out;
  if (worst_range > 0.0) out.push_back(range);
  if (worst_torque > 0.0) out.push_back(torque);
  if (worst_height > 0.0) out.push_back(height);
  return out;
}

void write_dynamics_csv(std::ostream& os, const DynamicsTrace& trace) {
  os << "t";
  for (int j = 1; j <= RobotModel::kNumJoints; ++j) os << ",tau_" << j;
  os << ",zmp_x,zmp_y,inside_flag,signed_distance\n";
  for (const auto& r : trace.rows) {
    csv::Row row(os);
    row.num(r.t);
    for (double tau : r.tau) row.num(tau);
    row.num(r.zmp.x()).num(r.zmp.y());
    row.integer(r.inside ? 1 : 0);
    row.num(r.signed_distance);
    row.end();
  }
}

CostVector evaluate_trajectory(const RobotModel& model, const GaitTrajectory& gait,
                               DynamicsTrace* trace) {
  CostVector out;
  if (gait.samples.empty()) {
    out.feasible = false;
    out.violations.push_back({Constraint::KinematicReach, 0.0, -1, "empty trajectory"});
    return out;
  }

  const JointTrajectory jt = joint_trajectory(model, gait);
  if (!jt.feasible) {
    out.feasible = false;
    out.violations.push_back(
        {Constraint::KinematicReach, 0.0, jt.failed_sample, jt.failure});
    return out;
  }

  const double dt = 1.0 / gait.sample_rate;
  const std::size_t n = gait.samples.size();

  // Pelvis acceleration by central differences of the planned CoM velocity
  // (one-sided at the ends), matching the finite-difference treatment of the
  // joint states.
  std::vector<Vec3> pelvis_acc(n, Vec3::Zero());
  if (n >= 2) {
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3& prev = gait.samples[k == 0 ? 0 : k - 1].com_vel;
      const Vec3& next = gait.samples[k + 1 == n ? n - 1 : k + 1].com_vel;
      const double denom = (k == 0 || k + 1 == n) ? dt : 2.0 * dt;
      pelvis_acc[k] = (next - prev) / denom;
    }
  }

  std::vector<std::array<double, RobotModel::kNumJoints>> taus(n);
  std::vector<double> com_z(n);
  if (trace) trace->rows.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const GaitSample& s = gait.samples[k];

    PelvisMotion pelvis;
    pelvis.pos = s.com;
    pelvis.vel = s.com_vel;
    pelvis.acc = pelvis_acc[k];

    const BipedLinkStates states = biped_link_states(model, pelvis, jt.samples[k]);
    com_z[k] = states.whole_body_com.z();

    const GrfShare share{s.left_grf_share, 1.0 - s.left_grf_share};
    taus[k] = inverse_dynamics_from_states(model, states, share);

    const Vec2 zmp = zmp_full_model(model, states);
    const Pose left_sole{Mat3::Identity(), Vec3(s.left_ankle.x(), s.left_ankle.y(), 0.0)};
    const Pose right_sole{Mat3::Identity(), Vec3(s.right_ankle.x(), s.right_ankle.y(), 0.0)};
    const SupportPolygon poly =
        support_polygon(s.stance, left_sole, right_sole, model.sole_vertices);
    const bool inside = point_in_polygon(zmp, poly);
    const double dist = distance_to_polygon(zmp, poly);
    const double signed_dist = inside ? -dist : dist;
    out.j_zmp += signed_dist;

    for (int j = 0; j < RobotModel::kNumJoints; ++j) {
      const double qd = jt.samples[k].qd[j];
      out.j_energy += std::abs(taus[k][j] * qd) * dt;
      out.j_torque += std::abs(taus[k][j]);
      out.j_vel += std::abs(qd);
    }

    if (trace) {
      auto& row = trace->rows[k];
      row.t = s.t;
      row.tau = taus[k];
      row.zmp = zmp;
      row.inside = inside;
      row.signed_distance = signed_dist;
    }
  }

  out.violations = check_constraints(model, jt.samples, taus, com_z, gait.params.z0);
  out.feasible = out.violations.empty();
  return out;
}

CostVector evaluate_gait(const RobotModel& model, const GaitParams& params, double duration,
                         double sample_rate, double step_width, DynamicsTrace* trace) {
  GaitTrajectory gait;
  try {
    gait = generate_gait(params, duration, step_width, sample_rate);
  } catch (const std::invalid_argument& e) {
    CostVector out;
    out.feasible = false;
    out.violations.push_back({Constraint::KinematicReach, 0.0, -1, e.what()});
    return out;
  }
  return evaluate_trajectory(model, gait, trace);
}

}  // namespace gaitopt
