#include "gaitopt/gait.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "gaitopt/csv.hpp"

namespace gaitopt {

namespace {

// Step i spans [i*t_step, (i+1)*t_step); the support transition onto step i
// happens at i*t_step and is straddled by a double-support window of length
// t_ds split dt_init : dt_end around it.
struct Timeline {
  double t_step, dt_init, dt_end;
  int n_steps;

  struct Location {
    bool in_ds;      // inside a transition window
    int index;       // transition index when in_ds, step index otherwise
    double local_t;  // from window start (ds) or step start (ss)
  };

  Location locate(double t) const {
    int i = static_cast<int>(std::floor(t / t_step));
    i = std::clamp(i, 0, n_steps - 1);
    if (i >= 1 && t <= i * t_step + dt_end) {
      return {true, i, t - (i * t_step - dt_init)};
    }
    if (i + 1 <= n_steps - 1 && t >= (i + 1) * t_step - dt_init) {
      return {true, i + 1, t - ((i + 1) * t_step - dt_init)};
    }
    return {false, i, t - i * t_step};
  }

  // Single-support window of step i (between the surrounding transitions).
  double ss_begin(int i) const { return i == 0 ? 0.0 : i * t_step + dt_end; }
  double ss_end(int i) const {
    return i == n_steps - 1 ? std::numeric_limits<double>::infinity()
                            : (i + 1) * t_step - dt_init;
  }
};

struct AnkleTracks {
  // Swing of step i (1..n_steps-2) moves the foot opposite to the stance
  // side from footprint i-1 to footprint i+1 during the SS window of step i.
  struct Swing {
    double t0 = 0.0, T = 0.0;
    Quintic x, y, z;
  };
  // Per side: planted position as a function of step index, plus swings.
  std::array<std::vector<Swing>, 2> swings;      // [left, right]
  const FootstepPlan* plan = nullptr;
  const Timeline* tl = nullptr;

  Vec3 at(Side side, double t) const {
    const auto& sw = swings[side == Side::Left ? 0 : 1];
    for (const auto& s : sw) {
      if (t >= s.t0 && t <= s.t0 + s.T) {
        const double u = t - s.t0;
        return Vec3(s.x.value(u), s.y.value(u), s.z.value(u));
      }
      if (t < s.t0) {
        // planted at the position this swing starts from
        return Vec3(s.x.value(0.0), s.y.value(0.0), 0.0);
      }
    }
    // after the last swing (or no swing at all): planted at the final placement
    const auto& steps = plan->steps;
    for (int i = static_cast<int>(steps.size()) - 1; i >= 0; --i) {
      if (steps[i].side == side) return Vec3(steps[i].position.x(), steps[i].position.y(), 0.0);
    }
    return Vec3::Zero();
  }

  bool airborne(Side side, double t) const {
    const auto& sw = swings[side == Side::Left ? 0 : 1];
    for (const auto& s : sw)
      if (t > s.t0 && t < s.t0 + s.T) return true;
    return false;
  }
};

}  // namespace

GaitTrajectory generate_gait(const GaitParams& params, double duration,
                             double step_width, double sample_rate) {
  params.validate();
  if (!(duration > 0.0)) throw std::invalid_argument("generate_gait: duration must be positive");
  if (!(sample_rate > 0.0))
    throw std::invalid_argument("generate_gait: sample_rate must be positive");

  GaitTrajectory traj;
  traj.sample_rate = sample_rate;
  traj.params = params;
  traj.plan = plan_footsteps(params.speed, params.t_step, step_width, duration);

  const double omega = params.omega();
  const DcmStepPlan dcm_plan = dcm_endpoints(traj.plan, omega, params.t_step);
  const int n_steps = static_cast<int>(traj.plan.steps.size());

  const Timeline tl{params.t_step, params.dt_init_ds(), params.dt_end_ds(), n_steps};

  // Double-support cubic per transition k (onto step k).
  std::vector<DsSegment> ds(n_steps);
  for (int k = 1; k < n_steps; ++k) {
    ds[k] = double_support_segment(dcm_plan.steps[k - 1].zmp, dcm_plan.steps[k].zmp,
                                   dcm_plan.steps[k].xi_init, omega, tl.dt_init, tl.dt_end);
  }

  // Ankle swings: step i moves the non-stance foot between its neighbouring
  // footprints over the SS window of step i.
  AnkleTracks ankles;
  ankles.plan = &traj.plan;
  ankles.tl = &tl;
  for (int i = 1; i + 1 < n_steps; ++i) {
    const Side swing_side = other(traj.plan.steps[i].side);
    const Vec2 from = traj.plan.steps[i - 1].position;
    const Vec2 to = traj.plan.steps[i + 1].position;
    AnkleTracks::Swing s;
    s.t0 = tl.ss_begin(i);
    s.T = tl.ss_end(i) - s.t0;
    s.x = Quintic::rest_to_rest(from.x(), to.x(), s.T);
    s.y = Quintic::rest_to_rest(from.y(), to.y(), s.T);
    s.z = Quintic::swing_apex(0.0, 0.0, params.h_ankle, s.T);
    ankles.swings[swing_side == Side::Left ? 0 : 1].push_back(s);
  }

  const int n_samples = static_cast<int>(std::llround(duration * sample_rate));
  traj.samples.resize(std::max(n_samples, 1));

  std::vector<double> times(traj.samples.size());
  std::vector<Vec2> dcm_xy(traj.samples.size());

  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    GaitSample& s = traj.samples[k];
    const double t = static_cast<double>(k) / sample_rate;
    s.t = t;
    times[k] = t;

    const auto loc = tl.locate(t);
    if (loc.in_ds) {
      s.dcm = ds[loc.index].value(loc.local_t);
      s.dcm_vel = ds[loc.index].deriv(loc.local_t);
    } else {
      const DcmStep& st = dcm_plan.steps[loc.index];
      s.dcm = dcm_at(loc.local_t, st.zmp, st.xi_init, omega);
      s.dcm_vel = omega * (s.dcm - st.zmp);
    }
    dcm_xy[k] = s.dcm;

    s.left_ankle = ankles.at(Side::Left, t);
    s.right_ankle = ankles.at(Side::Right, t);

    const bool left_air = ankles.airborne(Side::Left, t);
    const bool right_air = ankles.airborne(Side::Right, t);
    if (left_air || right_air) {
      s.phase = Phase::SingleSupport;
      s.stance = left_air ? Stance::Right : Stance::Left;
      s.left_grf_share = left_air ? 0.0 : 1.0;
    } else {
      s.phase = Phase::DoubleSupport;
      s.stance = Stance::Both;
      if (loc.in_ds) {
        // linear hand-over from the previous stance foot to the next one
        const double before = traj.plan.steps[loc.index - 1].side == Side::Left ? 1.0 : 0.0;
        const double after = traj.plan.steps[loc.index].side == Side::Left ? 1.0 : 0.0;
        const double u = loc.local_t / (tl.dt_init + tl.dt_end);
        s.left_grf_share = before + (after - before) * u;
      } else {
        // stationary stance: load follows the step's ZMP reference foot
        s.left_grf_share = traj.plan.steps[loc.index].side == Side::Left ? 1.0 : 0.0;
      }
    }
  }

  const auto com = com_trajectory(times, dcm_xy, dcm_xy.front(), omega);
  for (std::size_t k = 0; k < traj.samples.size(); ++k) {
    traj.samples[k].com = Vec3(com[k].com.x(), com[k].com.y(), params.z0);
    traj.samples[k].com_vel = Vec3(com[k].vel.x(), com[k].vel.y(), 0.0);
  }
  return traj;
}

void write_trajectory_csv(std::ostream& os, const GaitTrajectory& traj) {
  os << "t,dcm_x,dcm_y,com_x,com_y,com_z,com_vx,com_vy,"
        "lankle_x,lankle_y,lankle_z,rankle_x,rankle_y,rankle_z,phase,stance\n";
  for (const auto& s : traj.samples) {
    csv::Row row(os);
    row.num(s.t).num(s.dcm.x()).num(s.dcm.y());
    row.num(s.com.x()).num(s.com.y()).num(s.com.z());
    row.num(s.com_vel.x()).num(s.com_vel.y());
    row.num(s.left_ankle.x()).num(s.left_ankle.y()).num(s.left_ankle.z());
    row.num(s.right_ankle.x()).num(s.right_ankle.y()).num(s.right_ankle.z());
    row.text(to_string(s.phase)).text(to_string(s.stance));
    row.end();
  }
}

GaitTrajectory read_trajectory_csv(std::istream& is) {
  GaitTrajectory traj;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("trajectory CSV: missing header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = csv::split(line);
    if (f.size() != 16) throw std::invalid_argument("trajectory CSV: expected 16 columns");
    GaitSample s;
    s.t = csv::to_double(f[0]);
    s.dcm = Vec2(csv::to_double(f[1]), csv::to_double(f[2]));
    s.com = Vec3(csv::to_double(f[3]), csv::to_double(f[4]), csv::to_double(f[5]));
    s.com_vel = Vec3(csv::to_double(f[6]), csv::to_double(f[7]), 0.0);
    s.left_ankle = Vec3(csv::to_double(f[8]), csv::to_double(f[9]), csv::to_double(f[10]));
    s.right_ankle = Vec3(csv::to_double(f[11]), csv::to_double(f[12]), csv::to_double(f[13]));
    s.phase = phase_from_string(f[14]);
    s.stance = stance_from_string(f[15]);
    traj.samples.push_back(s);
  }
  if (!traj.samples.empty() && traj.samples.size() > 1) {
    traj.sample_rate = 1.0 / (traj.samples[1].t - traj.samples[0].t);
  }
  return traj;
}

}  // namespace gaitopt
