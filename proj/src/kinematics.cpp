#include "gaitopt/kinematics.hpp"

#include <sstream>

namespace gaitopt {

namespace {

Mat3 rot_x(double a) { return Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix(); }
Mat3 rot_y(double a) { return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(); }

}  // namespace

FkResult forward_kinematics(const RobotModel& model, const Pose& pelvis,
                            const std::array<double, RobotModel::kNumJoints>& q) {
  FkResult out;
  out.link_pose.resize(model.links.size());
  out.link_com.resize(model.links.size());
  out.link_pose[0] = pelvis;

  for (int leg = 0; leg < 2; ++leg) {
    Pose cur = pelvis;
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j) {
      const int idx = leg * RobotModel::kJointsPerLeg + j;
      const JointSpec& joint = model.joints[idx];
      cur.p = cur.p + cur.R * joint.origin;
      cur.R = cur.R * Eigen::AngleAxisd(q[idx], joint.axis).toRotationMatrix();
      out.link_pose[model.joint_child_link[idx]] = cur;
    }
  }

  Vec3 weighted = Vec3::Zero();
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    out.link_com[i] = out.link_pose[i].p + out.link_pose[i].R * model.links[i].com_offset;
    weighted += model.links[i].mass * out.link_com[i];
  }
  out.whole_body_com = weighted / model.total_mass();
  return out;
}

std::array<double, RobotModel::kJointsPerLeg> leg_ik(const RobotModel& model,
                                                     const Pose& pelvis,
                                                     const Pose& foot_sole, Side side) {
  const double thigh = model.leg.thigh_length;
  const double shank = model.leg.shank_length;
  const double reach = thigh + shank;
  constexpr double kReachEps = 1e-6;

  const Vec3 hip = pelvis.p + pelvis.R * model.hip_offset(side);
  const Vec3 ankle = foot_sole.p + foot_sole.R * Vec3(0.0, 0.0, model.leg.ankle_height);

  // Hip position seen from the ankle, in the foot frame.
  Vec3 r = foot_sole.R.transpose() * (hip - ankle);
  double dist = r.norm();
  if (dist > reach) {
    std::ostringstream msg;
    msg << "leg_ik: " << to_string(side) << " foot target out of reach (hip-ankle distance "
        << dist << " m > leg length " << reach << " m)";
    throw ReachError(msg.str());
  }
  if (dist > reach - kReachEps) {
    // Near full extension: clamp onto the reachable sphere.
    r *= (reach - kReachEps) / dist;
    dist = reach - kReachEps;
  }
  const double min_dist = std::abs(thigh - shank) + kReachEps;
  if (dist < min_dist) {
    if (dist < 1e-12) throw ReachError("leg_ik: foot target coincides with the hip");
    r *= min_dist / dist;
    dist = min_dist;
  }

  const double cos_knee = (dist * dist - thigh * thigh - shank * shank) / (2.0 * thigh * shank);
  const double q_knee = std::acos(std::clamp(cos_knee, -1.0, 1.0));

  // Angle at the ankle between the hip direction and the shank.
  const double ankle_offset =
      std::asin(std::clamp(thigh * std::sin(M_PI - q_knee) / dist, -1.0, 1.0));
  double q_ankle_roll = std::atan2(r.y(), r.z());
  if (q_ankle_roll > M_PI / 2.0) q_ankle_roll -= M_PI;
  else if (q_ankle_roll < -M_PI / 2.0) q_ankle_roll += M_PI;
  const double q_ankle_pitch =
      -std::atan2(r.x(), std::copysign(std::hypot(r.y(), r.z()), r.z())) - ankle_offset;

  // Remaining hip rotation, decomposed as yaw * roll * pitch.
  const Mat3 hip_rot = pelvis.R.transpose() * foot_sole.R * rot_x(-q_ankle_roll) *
                       rot_y(-q_ankle_pitch - q_knee);
  const double q_hip_yaw = std::atan2(-hip_rot(0, 1), hip_rot(1, 1));
  const double q_hip_roll =
      std::atan2(hip_rot(2, 1),
                 -hip_rot(0, 1) * std::sin(q_hip_yaw) + hip_rot(1, 1) * std::cos(q_hip_yaw));
  const double q_hip_pitch = std::atan2(-hip_rot(2, 0), hip_rot(2, 2));

  return {q_hip_yaw, q_hip_roll, q_hip_pitch, q_knee, q_ankle_pitch, q_ankle_roll};
}

JointTrajectory joint_trajectory(const RobotModel& model, const GaitTrajectory& gait) {
  JointTrajectory out;
  const std::size_t n = gait.samples.size();
  out.samples.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    const GaitSample& s = gait.samples[k];
    Pose pelvis;
    pelvis.p = s.com;  // pelvis carries the planned point-mass CoM
    Pose left{Mat3::Identity(), s.left_ankle};
    Pose right{Mat3::Identity(), s.right_ankle};
    try {
      const auto ql = leg_ik(model, pelvis, left, Side::Left);
      const auto qr = leg_ik(model, pelvis, right, Side::Right);
      for (int j = 0; j < RobotModel::kJointsPerLeg; ++j) {
        out.samples[k].q[j] = ql[j];
        out.samples[k].q[RobotModel::kJointsPerLeg + j] = qr[j];
      }
    } catch (const ReachError& e) {
      out.feasible = false;
      out.failed_sample = static_cast<int>(k);
      out.failure = e.what();
      out.samples.resize(k);
      return out;
    }
  }

  if (n < 2) return out;
  const double h = 1.0 / gait.sample_rate;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& prev = out.samples[k == 0 ? 0 : k - 1].q;
    const auto& next = out.samples[k + 1 == n ? n - 1 : k + 1].q;
    const double denom = (k == 0 || k + 1 == n) ? h : 2.0 * h;
    for (int j = 0; j < RobotModel::kNumJoints; ++j)
      out.samples[k].qd[j] = (next[j] - prev[j]) / denom;
  }
  if (n >= 3) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t kc = std::min(std::max<std::size_t>(k, 1), n - 2);
      const auto& prev = out.samples[kc - 1].q;
      const auto& mid = out.samples[kc].q;
      const auto& next = out.samples[kc + 1].q;
      for (int j = 0; j < RobotModel::kNumJoints; ++j)
        out.samples[k].qdd[j] = (next[j] - 2.0 * mid[j] + prev[j]) / (h * h);
    }
  }
  return out;
}

}  // namespace gaitopt
