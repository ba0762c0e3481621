#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaitopt/costs.hpp"
#include "gaitopt/dynamics.hpp"
#include "gaitopt/polygon.hpp"

using namespace gaitopt;

namespace {

RobotModel reference_model() {
  return load_model_file(std::string(GAITOPT_MODELS_DIR) + "/reference_biped.json");
}

// Static single-support stance with the pelvis shifted forward.
struct StaticStance {
  RobotModel model = reference_model();
  Pose pelvis;
  JointState joints;

  StaticStance() {
    // pelvis directly between the feet laterally, so the stance ankle roll is
    // zero and the ankle pitch axis stays world-aligned
    pelvis.p = Vec3(0.03, 0.0, 0.66);
    const Pose left{Mat3::Identity(), Vec3(0.0, 0.1, 0.0)};
    const Pose right{Mat3::Identity(), Vec3(0.0, -0.1, 0.0)};
    const auto ql = leg_ik(model, pelvis, left, Side::Left);
    const auto qr = leg_ik(model, pelvis, right, Side::Right);
    for (int j = 0; j < 6; ++j) {
      joints.q[j] = ql[j];
      joints.q[6 + j] = qr[j];
    }
  }

  PelvisMotion motion() const { return PelvisMotion{pelvis.p, Vec3::Zero(), Vec3::Zero()}; }
};

// Brute-force convex hull: a directed pair (i, j) is a hull edge when every
// other point lies on its left.
std::vector<Vec2> brute_force_hull(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Vec2 d = pts[j] - pts[i];
      bool all_left = true;
      for (std::size_t k = 0; k < n && all_left; ++k) {
        if (k == i || k == j) continue;
        const Vec2 r = pts[k] - pts[i];
        const double cross = d.x() * r.y() - d.y() * r.x();
        if (cross <= 1e-15) all_left = false;
      }
      if (all_left) edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  std::vector<Vec2> hull;
  if (edges.empty()) return hull;
  int start = edges[0].first, cur = start;
  do {
    hull.push_back(pts[cur]);
    bool advanced = false;
    for (const auto& [a, b] : edges) {
      if (a == cur) {
        cur = b;
        advanced = true;
        break;
      }
    }
    REQUIRE(advanced);
  } while (cur != start && hull.size() <= n);
  return hull;
}

// Crossing-number containment oracle.
bool ray_cast_inside(const Vec2& p, const SupportPolygon& poly) {
  bool inside = false;
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((v[i].y() > p.y()) != (v[j].y() > p.y())) {
      const double x_cross =
          v[j].x() + (p.y() - v[j].y()) / (v[i].y() - v[j].y()) * (v[i].x() - v[j].x());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

SupportPolygon random_convex_polygon(std::mt19937& gen) {
  std::uniform_int_distribution<int> nv(3, 8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = nv(gen);
  std::vector<double> angles(n);
  for (auto& a : angles) a = 2.0 * M_PI * u(gen);
  std::sort(angles.begin(), angles.end());
  const double cx = 2.0 * u(gen) - 1.0, cy = 2.0 * u(gen) - 1.0;
  const double rx = 0.2 + u(gen), ry = 0.2 + u(gen);
  SupportPolygon poly;
  for (double a : angles)
    poly.vertices.emplace_back(cx + rx * std::cos(a), cy + ry * std::sin(a));
  // reject near-duplicate vertices to keep the polygon simple
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    const Vec2 d =
        poly.vertices[(i + 1) % poly.vertices.size()] - poly.vertices[i];
    if (d.norm() < 1e-6) return random_convex_polygon(gen);
  }
  return poly;
}

}  // namespace

TEST_CASE("inverse_dynamics: static ankle torque balances the supported weight") {
  StaticStance fixture;
  const auto& model = fixture.model;
  const auto tau =
      inverse_dynamics(model, fixture.motion(), fixture.joints, Stance::Left, {1.0, 0.0});

  const FkResult fk = forward_kinematics(model, fixture.pelvis, fixture.joints.q);
  const int ankle_joint = 4;  // left ankle pitch
  const Pose ankle = fk.link_pose[model.joint_child_link[ankle_joint]];

  // moment-balance oracle: gravity moment of everything the ankle supports
  double oracle = 0.0;
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    const std::string& name = model.links[i].name;
    if (name == "l_ankle_link" || name == "l_foot") continue;
    oracle += kGravity * model.links[i].mass * (fk.link_com[i].x() - ankle.p.x());
  }
  CHECK(std::abs(tau[ankle_joint] - oracle) < 1e-9);

  // distal link CoMs sit under the ankle, so the whole-mass shortcut agrees
  const double shortcut =
      model.total_mass() * kGravity * (fk.whole_body_com.x() - ankle.p.x());
  CHECK(std::abs(tau[ankle_joint] - shortcut) < 1e-9);

  // same balance about the ankle-roll axis (x), lateral lever arm
  double oracle_roll = 0.0;
  for (std::size_t i = 0; i < model.links.size(); ++i) {
    if (model.links[i].name == "l_foot") continue;
    oracle_roll += -kGravity * model.links[i].mass * (fk.link_com[i].y() - ankle.p.y());
  }
  CHECK(std::abs(tau[5] - oracle_roll) < 1e-9);
}

TEST_CASE("inverse_dynamics: no gravity and no motion means no torque") {
  StaticStance fixture;
  const auto tau = inverse_dynamics(fixture.model, fixture.motion(), fixture.joints,
                                    Stance::Left, {1.0, 0.0}, /*gravity=*/0.0);
  for (double t : tau) CHECK(std::abs(t) < 1e-12);
}

TEST_CASE("inverse_dynamics: double-support shares sum to the single-support torques") {
  // With both feet loaded, each leg sees its share of the same total wrench;
  // the stance-leg torque interpolates linearly between the two extremes.
  StaticStance fixture;
  const auto& model = fixture.model;
  const auto full_left =
      inverse_dynamics(model, fixture.motion(), fixture.joints, Stance::Left, {1.0, 0.0});
  const auto split =
      inverse_dynamics(model, fixture.motion(), fixture.joints, Stance::Both, {0.6, 0.4});
  const auto zero_left =
      inverse_dynamics(model, fixture.motion(), fixture.joints, Stance::Both, {0.0, 1.0});
  for (int j = 0; j < 6; ++j) {
    const double expected = 0.6 * full_left[j] + 0.4 * zero_left[j];
    CHECK(split[j] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("chain inverse dynamics satisfies the work-energy theorem") {
  // free-standing 2-link pitch pendulum driven through a smooth trajectory
  std::array<ChainLink, 2> chain;
  chain[0] = ChainLink{Vec3(0, 0, 0), Vec3::UnitY(), 2.0, Vec3(0, 0, -0.25),
                       (Mat3() << 0.02, 0, 0, 0, 0.02, 0, 0, 0, 0.002).finished()};
  chain[1] = ChainLink{Vec3(0, 0, -0.5), Vec3::UnitY(), 1.5, Vec3(0, 0, -0.2),
                       (Mat3() << 0.01, 0, 0, 0, 0.01, 0, 0, 0, 0.001).finished()};
  BodyMotion base;  // fixed base at the origin

  auto q_of = [](double t) {
    return std::array<double, 2>{0.8 * std::sin(2.0 * t), 0.5 * std::sin(3.0 * t + 0.4)};
  };
  auto qd_of = [](double t) {
    return std::array<double, 2>{1.6 * std::cos(2.0 * t), 1.5 * std::cos(3.0 * t + 0.4)};
  };
  auto qdd_of = [](double t) {
    return std::array<double, 2>{-3.2 * std::sin(2.0 * t), -4.5 * std::sin(3.0 * t + 0.4)};
  };

  auto energy = [&](double t) {
    const auto q = q_of(t);
    const auto qd = qd_of(t);
    const auto qdd = qdd_of(t);
    std::array<LinkMotion, 2> motion;
    chain_outward(chain, base, q, qd, qdd, motion);
    double e = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Mat3 iw = motion[i].frame.R * chain[i].inertia * motion[i].frame.R.transpose();
      e += 0.5 * chain[i].mass * motion[i].com_vel.squaredNorm();
      e += 0.5 * motion[i].frame.omega.dot(iw * motion[i].frame.omega);
      e += chain[i].mass * kGravity * motion[i].com.z();
    }
    return e;
  };
  auto power = [&](double t) {
    const auto q = q_of(t);
    const auto qd = qd_of(t);
    const auto qdd = qdd_of(t);
    std::array<LinkMotion, 2> motion;
    chain_outward(chain, base, q, qd, qdd, motion);
    std::array<double, 2> tau;
    chain_inward(chain, motion, Wrench{}, kGravity, tau);
    return tau[0] * qd[0] + tau[1] * qd[1];
  };

  const int steps = 2000;
  const double T = 1.0, h = T / steps;
  double work = 0.0;
  for (int k = 0; k < steps; ++k)
    work += 0.5 * h * (power(k * h) + power((k + 1) * h));
  const double de = energy(T) - energy(0.0);
  CHECK(std::abs(work - de) < 1e-3 * std::max(1.0, std::abs(de)));
}

TEST_CASE("zmp: static stance projects the whole-body CoM") {
  StaticStance fixture;
  const BipedLinkStates states =
      biped_link_states(fixture.model, fixture.motion(), fixture.joints);
  const Vec2 zmp = zmp_full_model(fixture.model, states);
  CHECK(std::abs(zmp.x() - states.whole_body_com.x()) < 1e-9);
  CHECK(std::abs(zmp.y() - states.whole_body_com.y()) < 1e-9);
}

TEST_CASE("zmp: LIPM point mass recovers the planned reference") {
  const double z0 = 0.68;
  const double omega = std::sqrt(kGravity / z0);
  const Vec2 r(0.05, -0.02);
  const Vec2 xi0(0.08, 0.01);
  for (double t : {0.0, 0.2, 0.5}) {
    // closed-form CoM converging to a DCM segment, acceleration from the
    // pendulum equation
    const Vec2 xi = dcm_at(t, r, xi0, omega);
    const Vec2 x = r + 0.3 * (xi - r);
    const Vec2 acc = omega * omega * (x - r);
    const double mass = 45.0;
    const Vec3 com(x.x(), x.y(), z0);
    const Vec3 com_acc(acc.x(), acc.y(), 0.0);
    const Vec3 ldot = Vec3::Zero();
    const Vec2 zmp = zmp_from_momenta(std::span<const double>(&mass, 1),
                                      std::span<const Vec3>(&com, 1),
                                      std::span<const Vec3>(&com_acc, 1),
                                      std::span<const Vec3>(&ldot, 1));
    CHECK((zmp - r).norm() < 1e-6);
  }
}

TEST_CASE("zmp: uniform horizontal acceleration shifts by -a z0 / g") {
  const double z0 = 0.7, a = 1.3, mass = 45.0;
  const Vec3 com(0.2, -0.1, z0);
  const Vec3 com_acc(a, 0.0, 0.0);
  const Vec3 ldot = Vec3::Zero();
  const Vec2 zmp = zmp_from_momenta(std::span<const double>(&mass, 1),
                                    std::span<const Vec3>(&com, 1),
                                    std::span<const Vec3>(&com_acc, 1),
                                    std::span<const Vec3>(&ldot, 1));
  CHECK(zmp.x() == doctest::Approx(0.2 - a * z0 / kGravity).epsilon(1e-12));
  CHECK(zmp.y() == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("zmp: free fall is degenerate") {
  const double mass = 45.0;
  const Vec3 com(0.0, 0.0, 0.7);
  const Vec3 com_acc(0.0, 0.0, -kGravity);
  const Vec3 ldot = Vec3::Zero();
  CHECK_THROWS_AS(zmp_from_momenta(std::span<const double>(&mass, 1),
                                   std::span<const Vec3>(&com, 1),
                                   std::span<const Vec3>(&com_acc, 1),
                                   std::span<const Vec3>(&ldot, 1)),
                  DegenerateDynamicsError);
}

TEST_CASE("support_polygon: single stance maps the sole rectangle") {
  const RobotModel model = reference_model();
  const Pose left{Mat3::Identity(), Vec3(0.0, 0.0, 0.0)};
  const Pose right{Mat3::Identity(), Vec3(0.0, -0.2, 0.0)};
  const auto poly = support_polygon(Stance::Left, left, right, model.sole_vertices);
  REQUIRE(poly.vertices.size() == 4);
  double area2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2& a = poly.vertices[i];
    const Vec2& b = poly.vertices[(i + 1) % 4];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  CHECK(0.5 * area2 == doctest::Approx(0.24 * 0.14).epsilon(1e-12));
  for (const auto& v : poly.vertices) {
    CHECK(std::abs(v.x()) == doctest::Approx(0.12));
    CHECK(std::abs(v.y()) == doctest::Approx(0.07));
  }
}

TEST_CASE("support_polygon: overlapping feet degenerate to one sole") {
  const RobotModel model = reference_model();
  const Pose sole{Mat3::Identity(), Vec3(0.1, 0.05, 0.0)};
  const auto poly = support_polygon(Stance::Both, sole, sole, model.sole_vertices);
  CHECK(poly.vertices.size() == 4);
}

TEST_CASE("support_polygon: double support hull matches a brute-force oracle") {
  const RobotModel model = reference_model();
  const Pose left{Mat3::Identity(), Vec3(0.175, 0.1, 0.0)};
  const Pose right{Mat3::Identity(), Vec3(0.0, -0.1, 0.0)};
  const auto poly = support_polygon(Stance::Both, left, right, model.sole_vertices);

  std::vector<Vec2> pts;
  for (const auto& v : model.sole_vertices) {
    pts.emplace_back(v.x() + 0.175, v.y() + 0.1);
    pts.emplace_back(v.x() + 0.0, v.y() - 0.1);
  }
  const auto oracle = brute_force_hull(pts);
  REQUIRE(poly.vertices.size() == oracle.size());
  // same cyclic sequence (both counterclockwise); align the starting vertex
  std::size_t shift = 0;
  for (; shift < oracle.size(); ++shift)
    if ((oracle[shift] - poly.vertices[0]).norm() < 1e-12) break;
  REQUIRE(shift < oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK((poly.vertices[i] - oracle[(shift + i) % oracle.size()]).norm() < 1e-12);
}

TEST_CASE("point_in_polygon: centroid in, far point out, boundary in") {
  SupportPolygon tri{{Vec2(0, 0), Vec2(1, 0), Vec2(0.3, 0.9)}};
  const Vec2 centroid = (tri.vertices[0] + tri.vertices[1] + tri.vertices[2]) / 3.0;
  CHECK(point_in_polygon(centroid, tri));
  CHECK_FALSE(point_in_polygon(Vec2(10.0, 10.0), tri));
  CHECK(point_in_polygon(Vec2(0.5, 0.0), tri));  // on an edge counts as inside
  CHECK(point_in_polygon(Vec2(1.0, 0.0), tri));  // vertex counts as inside
}

TEST_CASE("point_in_polygon: agrees with a ray-casting oracle") {
  std::mt19937 gen(97);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  int checked = 0;
  while (checked < 10000) {
    const SupportPolygon poly = random_convex_polygon(gen);
    const Vec2 p(u(gen), u(gen));
    if (distance_to_polygon(p, poly) < 1e-9) continue;  // skip boundary cases
    CHECK(point_in_polygon(p, poly) == ray_cast_inside(p, poly));
    ++checked;
  }
}

TEST_CASE("point_in_polygon: invariant under cyclic vertex rotation") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const SupportPolygon poly = random_convex_polygon(gen);
    const Vec2 p(u(gen), u(gen));
    const bool expected = point_in_polygon(p, poly);
    for (std::size_t shift = 1; shift < poly.vertices.size(); ++shift) {
      SupportPolygon rotated;
      for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        rotated.vertices.push_back(poly.vertices[(i + shift) % poly.vertices.size()]);
      CHECK(point_in_polygon(p, rotated) == expected);
    }
  }
}

TEST_CASE("distance_to_polygon: unit square and boundary cases") {
  SupportPolygon square{{Vec2(0, 0), Vec2(1, 0), Vec2(1, 1), Vec2(0, 1)}};
  CHECK(distance_to_polygon(Vec2(0.5, 0.5), square) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(distance_to_polygon(Vec2(0, 0), square) == 0.0);
  CHECK(distance_to_polygon(Vec2(0.3, 0.0), square) == 0.0);  // on boundary -> zero
  CHECK(distance_to_polygon(Vec2(2.0, 0.5), square) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distance_to_polygon: matches dense boundary sampling") {
  std::mt19937 gen(59);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const SupportPolygon poly = random_convex_polygon(gen);
    const Vec2 p(u(gen), u(gen));
    double oracle = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.vertices.size();
    const int per_edge = 10000 / static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = poly.vertices[i];
      const Vec2& b = poly.vertices[(i + 1) % n];
      for (int k = 0; k <= per_edge; ++k) {
        const Vec2 s = a + (b - a) * (static_cast<double>(k) / per_edge);
        oracle = std::min(oracle, (p - s).norm());
      }
    }
    CHECK(std::abs(distance_to_polygon(p, poly) - oracle) < 1e-4);
  }
}
