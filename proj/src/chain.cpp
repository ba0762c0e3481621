#include "gaitopt/chain.hpp"

namespace gaitopt {

void chain_outward(std::span<const ChainLink> chain, const BodyMotion& base,
                   std::span<const double> q, std::span<const double> qd,
                   std::span<const double> qdd, std::span<LinkMotion> out) {
  const BodyMotion* parent = &base;
  for (std::size_t j = 0; j < chain.size(); ++j) {
    const ChainLink& link = chain[j];
    const Vec3 d = parent->R * link.origin;

    BodyMotion cur;
    cur.p = parent->p + d;
    cur.v = parent->v + parent->omega.cross(d);
    cur.a = parent->a + parent->alpha.cross(d) + parent->omega.cross(parent->omega.cross(d));

    const Vec3 axis_w = parent->R * link.axis;
    cur.R = parent->R * Eigen::AngleAxisd(q[j], link.axis).toRotationMatrix();
    cur.omega = parent->omega + axis_w * qd[j];
    cur.alpha = parent->alpha + axis_w * qdd[j] + parent->omega.cross(axis_w * qd[j]);

    LinkMotion& lm = out[j];
    lm.frame = cur;
    lm.axis_w = axis_w;
    const Vec3 rc = cur.R * link.com_offset;
    lm.com = cur.p + rc;
    lm.com_vel = cur.v + cur.omega.cross(rc);
    lm.com_acc = cur.a + cur.alpha.cross(rc) + cur.omega.cross(cur.omega.cross(rc));

    parent = &out[j].frame;
  }
}

void chain_inward(std::span<const ChainLink> chain, std::span<const LinkMotion> motions,
                  const Wrench& external_on_tip, double gravity, std::span<double> tau) {
  Vec3 f = -external_on_tip.force;
  Vec3 n = -external_on_tip.moment;  // about the world origin
  for (int j = static_cast<int>(chain.size()) - 1; j >= 0; --j) {
    const ChainLink& link = chain[j];
    const LinkMotion& m = motions[j];
    const Mat3 iw = m.frame.R * link.inertia * m.frame.R.transpose();
    const Vec3 fi = link.mass * (m.com_acc + Vec3(0.0, 0.0, gravity));
    f += fi;
    n += m.com.cross(fi) + iw * m.frame.alpha + m.frame.omega.cross(iw * m.frame.omega);
    tau[j] = m.axis_w.dot(n - m.frame.p.cross(f));
  }
}

}  // namespace gaitopt
