#include "gaitopt/robot_model.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace gaitopt {

namespace {

using nlohmann::json;

Vec3 parse_vec3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ModelError(where + ": expected a 3-vector");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Mat3 parse_mat3(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ModelError(where + ": expected a 3x3 matrix");
  Mat3 m;
  for (int r = 0; r < 3; ++r) {
    if (!j[r].is_array() || j[r].size() != 3)
      throw ModelError(where + ": expected a 3x3 matrix");
    for (int c = 0; c < 3; ++c) m(r, c) = j[r][c].get<double>();
  }
  return m;
}

const json& require(const json& j, const std::string& key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw ModelError(where + ": missing field '" + key + "'");
  return *it;
}

void check_inertia(const Mat3& inertia, const std::string& where) {
  const double scale = std::max(inertia.cwiseAbs().maxCoeff(), 1e-12);
  if (((inertia - inertia.transpose()).cwiseAbs().maxCoeff()) > 1e-9 * scale)
    throw ModelError(where + ": inertia must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> es(inertia);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw ModelError(where + ": inertia must be positive definite");
}

// Expected per-leg joint layout: axis pattern and origin relative to the leg
// geometry. Keeps the analytic IK and the generic FK consistent.
struct ExpectedJoint {
  Vec3 axis;
  const char* role;
};

const ExpectedJoint kLegLayout[RobotModel::kJointsPerLeg] = {
    {Vec3::UnitZ(), "hip yaw"},   {Vec3::UnitX(), "hip roll"},
    {Vec3::UnitY(), "hip pitch"}, {Vec3::UnitY(), "knee pitch"},
    {Vec3::UnitY(), "ankle pitch"}, {Vec3::UnitX(), "ankle roll"}};

}  // namespace

int RobotModel::link_index(const std::string& link_name) const {
  for (std::size_t i = 0; i < links.size(); ++i)
    if (links[i].name == link_name) return static_cast<int>(i);
  throw ModelError("unknown link '" + link_name + "'");
}

RobotModel load_model(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("model document is not valid JSON: ") + e.what());
  }

  RobotModel model;
  model.name = doc.value("name", "unnamed");

  for (const auto& jl : require(doc, "links", "model")) {
    LinkSpec link;
    link.name = require(jl, "name", "link").get<std::string>();
    const std::string where = "link '" + link.name + "'";
    link.mass = require(jl, "mass", where).get<double>();
    if (!(link.mass > 0.0)) throw ModelError(where + ": mass must be positive");
    link.com_offset = parse_vec3(require(jl, "com_offset", where), where + " com_offset");
    link.inertia = parse_mat3(require(jl, "inertia", where), where + " inertia");
    check_inertia(link.inertia, where);
    model.links.push_back(link);
  }
  if (model.links.empty()) throw ModelError("model: links must not be empty");

  for (const auto& jj : require(doc, "joints", "model")) {
    JointSpec joint;
    joint.name = require(jj, "name", "joint").get<std::string>();
    const std::string where = "joint '" + joint.name + "'";
    joint.parent = require(jj, "parent", where).get<std::string>();
    joint.child = require(jj, "child", where).get<std::string>();
    joint.axis = parse_vec3(require(jj, "axis", where), where + " axis");
    joint.origin = parse_vec3(require(jj, "origin", where), where + " origin");
    const auto& lim = require(jj, "angle_limits", where);
    if (!lim.is_array() || lim.size() != 2)
      throw ModelError(where + ": angle_limits must be [min, max]");
    joint.min_angle = lim[0].get<double>();
    joint.max_angle = lim[1].get<double>();
    if (!(joint.min_angle < joint.max_angle))
      throw ModelError(where + ": angle_limits must satisfy min < max");
    joint.torque_limit = require(jj, "torque_limit", where).get<double>();
    if (!(joint.torque_limit > 0.0)) throw ModelError(where + ": torque_limit must be positive");
    joint.velocity_limit = require(jj, "velocity_limit", where).get<double>();
    if (!(joint.velocity_limit > 0.0))
      throw ModelError(where + ": velocity_limit must be positive");
    model.joints.push_back(joint);
  }
  if (model.joints.size() != RobotModel::kNumJoints) {
    std::ostringstream msg;
    msg << "model: expected " << RobotModel::kNumJoints << " joints (6 per leg), got "
        << model.joints.size();
    throw ModelError(msg.str());
  }
  if (model.links.size() != 1 + model.joints.size())
    throw ModelError("model: expected one link per joint plus the pelvis");

  const auto& geo = require(doc, "leg_geometry", "model");
  model.leg.hip_offset =
      parse_vec3(require(geo, "hip_offset", "leg_geometry"), "leg_geometry hip_offset");
  model.leg.thigh_length = require(geo, "thigh_length", "leg_geometry").get<double>();
  model.leg.shank_length = require(geo, "shank_length", "leg_geometry").get<double>();
  model.leg.ankle_height = require(geo, "ankle_height", "leg_geometry").get<double>();
  if (!(model.leg.thigh_length > 0.0))
    throw ModelError("leg_geometry: thigh_length must be positive");
  if (!(model.leg.shank_length > 0.0))
    throw ModelError("leg_geometry: shank_length must be positive");
  if (!(model.leg.ankle_height > 0.0))
    throw ModelError("leg_geometry: ankle_height must be positive");
  if (!(model.leg.hip_offset.y() > 0.0))
    throw ModelError("leg_geometry: hip_offset must point to the left hip (y > 0)");

  const auto& jv = require(doc, "sole_vertices", "model");
  if (!jv.is_array() || jv.size() != 4)
    throw ModelError("sole_vertices: expected exactly 4 vertices");
  for (int i = 0; i < 4; ++i) {
    if (!jv[i].is_array() || jv[i].size() != 2)
      throw ModelError("sole_vertices: each vertex must be [x, y]");
    model.sole_vertices[i] = Vec2(jv[i][0].get<double>(), jv[i][1].get<double>());
  }
  // Normalize to counterclockwise, then require strict convexity.
  double area2 = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = model.sole_vertices[i];
    const Vec2& b = model.sole_vertices[(i + 1) % 4];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  if (std::abs(area2) < 1e-12) throw ModelError("sole_vertices: polygon area must be positive");
  if (area2 < 0.0) std::reverse(model.sole_vertices.begin(), model.sole_vertices.end());
  for (int i = 0; i < 4; ++i) {
    const Vec2 e1 = model.sole_vertices[(i + 1) % 4] - model.sole_vertices[i];
    const Vec2 e2 = model.sole_vertices[(i + 2) % 4] - model.sole_vertices[(i + 1) % 4];
    if (e1.x() * e2.y() - e1.y() * e2.x() <= 0.0)
      throw ModelError("sole_vertices: polygon must be convex");
  }

  // Structural validation of the two leg chains.
  const std::string& root = model.links[0].name;
  std::set<std::string> children;
  for (int leg = 0; leg < 2; ++leg) {
    const Side side = leg == 0 ? Side::Left : Side::Right;
    const Vec3 hip = model.hip_offset(side);
    std::string expected_parent = root;
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j) {
      const int idx = leg * RobotModel::kJointsPerLeg + j;
      const JointSpec& joint = model.joints[idx];
      const std::string where = "joint '" + joint.name + "'";
      if (joint.parent != expected_parent)
        throw ModelError(where + ": parent must be '" + expected_parent + "'");
      if ((joint.axis - kLegLayout[j].axis).norm() > 1e-9)
        throw ModelError(where + ": axis must match the " + std::string(kLegLayout[j].role) +
                         " convention");
      Vec3 expected_origin = Vec3::Zero();
      if (j == 0) expected_origin = hip;
      if (j == 3) expected_origin = Vec3(0, 0, -model.leg.thigh_length);
      if (j == 4) expected_origin = Vec3(0, 0, -model.leg.shank_length);
      if ((joint.origin - expected_origin).norm() > 1e-9)
        throw ModelError(where + ": origin is inconsistent with leg_geometry");
      if (!children.insert(joint.child).second)
        throw ModelError(where + ": child '" + joint.child + "' already used");
      model.joint_child_link[idx] = model.link_index(joint.child);
      if (model.joint_child_link[idx] == 0)
        throw ModelError(where + ": the root link cannot be a joint child");
      expected_parent = joint.child;
    }
  }

  // Derived data for the dynamics chains.
  model.total_mass_ = 0.0;
  for (const auto& link : model.links) model.total_mass_ += link.mass;
  for (int leg = 0; leg < 2; ++leg) {
    auto& chain = leg == 0 ? model.left_chain : model.right_chain;
    for (int j = 0; j < RobotModel::kJointsPerLeg; ++j) {
      const int idx = leg * RobotModel::kJointsPerLeg + j;
      const JointSpec& joint = model.joints[idx];
      const LinkSpec& link = model.links[model.joint_child_link[idx]];
      chain[j] = ChainLink{joint.origin, joint.axis, link.mass, link.com_offset, link.inertia};
    }
  }
  return model;
}

RobotModel load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_model(ss.str());
}

}  // namespace gaitopt
