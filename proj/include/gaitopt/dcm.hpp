#pragma once

#include <span>
#include <vector>

#include "gaitopt/footsteps.hpp"
#include "gaitopt/polynomial.hpp"

namespace gaitopt {

/// DCM boundary values for one step of the plan.
struct DcmStep {
  Vec2 zmp = Vec2::Zero();      // ZMP reference held during the step
  Vec2 xi_init = Vec2::Zero();  // DCM at the start of the step
  Vec2 xi_end = Vec2::Zero();   // DCM at the end of the step
};

struct DcmStepPlan {
  std::vector<DcmStep> steps;
  double omega = 0.0;
  double t_step = 0.0;
};

/// Closed-form DCM under a constant ZMP reference, t seconds after xi_init.
Vec2 dcm_at(double t, const Vec2& zmp, const Vec2& xi_init, double omega);

/// Backward endpoint recursion: the final step ends on its ZMP reference and
/// each step's initial DCM chains to the previous step's end.
DcmStepPlan dcm_endpoints(const FootstepPlan& plan, double omega, double t_step);

/// Cubic double-support bridge between two single-support segments. Local
/// time runs over [0, dt_init + dt_end] with the instantaneous support
/// transition at dt_init. Boundary positions follow the exponential DCM
/// propagation under the adjacent ZMP references; boundary velocities follow
/// the single-support dynamics with the same references, which makes the
/// spliced trajectory C1.
struct DsSegment {
  Cubic x, y;
  double duration = 0.0;

  Vec2 value(double t) const { return Vec2(x.value(t), y.value(t)); }
  Vec2 deriv(double t) const { return Vec2(x.deriv(t), y.deriv(t)); }
};

DsSegment double_support_segment(const Vec2& prev_zmp, const Vec2& cur_zmp,
                                 const Vec2& xi_init_step, double omega,
                                 double dt_init, double dt_end);

struct ComSample {
  double t = 0.0;
  Vec2 com = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
};

/// CoM from a sampled DCM sequence: the stable first-order dynamics are
/// integrated exactly per interval with the DCM taken linear within it, so
/// accuracy does not depend on the sample rate. Velocities come from the
/// dynamics relation itself, not finite differences.
std::vector<ComSample> com_trajectory(std::span<const double> times,
                                      std::span<const Vec2> dcm,
                                      const Vec2& x0, double omega);

}  // namespace gaitopt
