#include "gaitopt/footsteps.hpp"

namespace gaitopt {

FootstepPlan plan_footsteps(double speed, double t_step, double step_width, double duration) {
  if (!(t_step > 0.0)) throw std::invalid_argument("plan_footsteps: t_step must be positive");
  if (!(duration > 0.0)) throw std::invalid_argument("plan_footsteps: duration must be positive");
  if (!(speed >= 0.0)) throw std::invalid_argument("plan_footsteps: speed must be non-negative");
  if (!(step_width > 0.0)) throw std::invalid_argument("plan_footsteps: step_width must be positive");

  const int interior = static_cast<int>(std::ceil(duration / t_step));
  const int count = interior + 2;
  const double length = speed * t_step;

  FootstepPlan plan;
  plan.step_width = step_width;
  plan.step_length = length;
  plan.steps.reserve(count);
  for (int i = 0; i < count; ++i) {
    Footstep f;
    f.side = (i % 2 == 0) ? Side::Left : Side::Right;
    double x;
    if (i <= 1) {
      x = 0.0;  // initial double stance
    } else if (i == count - 1) {
      x = (count - 3) * length;  // closes alongside the previous footprint
    } else {
      x = (i - 1) * length;
    }
    const double y = (f.side == Side::Left ? 0.5 : -0.5) * step_width;
    f.position = Vec2(x, y);
    f.zmp_ref = f.position;
    plan.steps.push_back(f);
  }
  return plan;
}

}  // namespace gaitopt
