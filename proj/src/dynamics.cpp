#include "gaitopt/dynamics.hpp"

namespace gaitopt {

namespace {

BodyMotion pelvis_body(const PelvisMotion& pelvis) {
  BodyMotion base;
  base.p = pelvis.pos;
  base.v = pelvis.vel;
  base.a = pelvis.acc;
  return base;
}

LinkMotion pelvis_link(const RobotModel& model, const BodyMotion& base) {
  LinkMotion lm;
  lm.frame = base;
  lm.axis_w = Vec3::UnitZ();
  const Vec3 rc = base.R * model.links[0].com_offset;
  lm.com = base.p + rc;
  lm.com_vel = base.v;
  lm.com_acc = base.a;
  return lm;
}

// Total wrench the ground must apply: force and moment about the world origin.
Wrench total_reaction(const RobotModel& model, const BipedLinkStates& states, double gravity) {
  Wrench w;
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const LinkMotion& m = states.links[i];
    const LinkSpec& link = model.links[i];
    const Vec3 fi = link.mass * (m.com_acc + Vec3(0.0, 0.0, gravity));
    const Mat3 iw = m.frame.R * link.inertia * m.frame.R.transpose();
    w.force += fi;
    w.moment += m.com.cross(fi) + iw * m.frame.alpha + m.frame.omega.cross(iw * m.frame.omega);
  }
  return w;
}

}  // namespace

BipedLinkStates biped_link_states(const RobotModel& model, const PelvisMotion& pelvis,
                                  const JointState& joints) {
  const BodyMotion base = pelvis_body(pelvis);
  BipedLinkStates out;
  out.links.resize(model.links.size());
  out.links[0] = pelvis_link(model, base);

  std::array<LinkMotion, RobotModel::kJointsPerLeg> leg_motion;
  for (int leg = 0; leg < 2; ++leg) {
    const Side side = leg == 0 ? Side::Left : Side::Right;
    const int base_idx = model.joint_base(side);
    chain_outward(model.chain(side), base,
                  std::span(joints.q).subspan(base_idx, RobotModel::kJointsPerLeg),
                  std::span(joints.qd).subspan(base_idx, RobotModel::kJointsPerLeg),
                  std::span(joints.qdd).subspan(base_idx, RobotModel::kJointsPerLeg),
                  leg_motion);
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j)
      out.links[model.joint_child_link[base_idx + j]] = leg_motion[j];
  }

  Vec3 weighted = Vec3::Zero();
  for (std::size_t i = 0; i < model.links.size(); ++i)
    weighted += model.links[i].mass * out.links[i].com;
  out.whole_body_com = weighted / model.total_mass();
  return out;
}

std::array<double, RobotModel::kNumJoints> inverse_dynamics_from_states(
    const RobotModel& model, const BipedLinkStates& states, const GrfShare& share,
    double gravity) {
  const Wrench total = total_reaction(model, states, gravity);

  std::array<double, RobotModel::kNumJoints> tau{};
  std::array<LinkMotion, RobotModel::kJointsPerLeg> leg_motion;
  std::array<double, RobotModel::kJointsPerLeg> leg_tau;
  for (int leg = 0; leg < 2; ++leg) {
    const Side side = leg == 0 ? Side::Left : Side::Right;
    const int base_idx = model.joint_base(side);
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j)
      leg_motion[j] = states.links[model.joint_child_link[base_idx + j]];

    const double s = side == Side::Left ? share.left : share.right;
    Wrench external;
    external.force = s * total.force;
    external.moment = s * total.moment;
    chain_inward(model.chain(side), leg_motion, external, gravity, leg_tau);
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j) tau[base_idx + j] = leg_tau[j];
  }
  return tau;
}

std::array<double, RobotModel::kNumJoints> inverse_dynamics(
    const RobotModel& model, const PelvisMotion& pelvis, const JointState& joints,
    Stance stance, const GrfShare& share, double gravity) {
  GrfShare s = share;
  if (stance == Stance::Left) s = {1.0, 0.0};
  if (stance == Stance::Right) s = {0.0, 1.0};
  const BipedLinkStates states = biped_link_states(model, pelvis, joints);
  return inverse_dynamics_from_states(model, states, s, gravity);
}

Vec2 zmp_from_momenta(std::span<const double> mass, std::span<const Vec3> com,
                      std::span<const Vec3> com_acc, std::span<const Vec3> ang_mom_rate,
                      double gravity) {
  double den = 0.0;
  double num_x = 0.0, num_y = 0.0;
  double total_mass = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    const double fz = mass[i] * (com_acc[i].z() + gravity);
    den += fz;
    num_x += fz * com[i].x() - mass[i] * com_acc[i].x() * com[i].z() - ang_mom_rate[i].y();
    num_y += fz * com[i].y() - mass[i] * com_acc[i].y() * com[i].z() + ang_mom_rate[i].x();
    total_mass += mass[i];
  }
  if (std::abs(den) <= 1e-9 * std::max(total_mass * gravity, 1e-12))
    throw DegenerateDynamicsError("zmp: vertical support force vanishes (free fall)");
  return Vec2(num_x / den, num_y / den);
}

Vec2 zmp_full_model(const RobotModel& model, const BipedLinkStates& states, double gravity) {
  const std::size_t n = model.links.size();
  std::vector<double> mass(n);
  std::vector<Vec3> com(n), acc(n), ldot(n);
  for (std::size_t i = 0; i < n; ++i) {
    const LinkMotion& m = states.links[i];
    mass[i] = model.links[i].mass;
    com[i] = m.com;
    acc[i] = m.com_acc;
    const Mat3 iw = m.frame.R * model.links[i].inertia * m.frame.R.transpose();
    ldot[i] = iw * m.frame.alpha + m.frame.omega.cross(iw * m.frame.omega);
  }
  return zmp_from_momenta(mass, com, acc, ldot, gravity);
}

}  // namespace gaitopt
