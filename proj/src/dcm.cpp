#include "gaitopt/dcm.hpp"

namespace gaitopt {

Vec2 dcm_at(double t, const Vec2& zmp, const Vec2& xi_init, double omega) {
  // same as zmp + e^{omega t} (xi_init - zmp), exact at t = 0
  return xi_init + (std::exp(omega * t) - 1.0) * (xi_init - zmp);
}

DcmStepPlan dcm_endpoints(const FootstepPlan& plan, double omega, double t_step) {
  if (plan.steps.empty()) throw std::invalid_argument("dcm_endpoints: empty footstep plan");
  const int n = static_cast<int>(plan.steps.size());

  DcmStepPlan out;
  out.omega = omega;
  out.t_step = t_step;
  out.steps.resize(n);
  for (int i = 0; i < n; ++i) out.steps[i].zmp = plan.steps[i].zmp_ref;

  // The DCM comes to rest on the last ZMP reference.
  out.steps[n - 1].xi_end = out.steps[n - 1].zmp;
  const double decay = std::exp(-omega * t_step);
  for (int i = n - 1; i >= 0; --i) {
    out.steps[i].xi_init = out.steps[i].zmp + decay * (out.steps[i].xi_end - out.steps[i].zmp);
    if (i > 0) out.steps[i - 1].xi_end = out.steps[i].xi_init;
  }
  return out;
}

DsSegment double_support_segment(const Vec2& prev_zmp, const Vec2& cur_zmp,
                                 const Vec2& xi_init_step, double omega,
                                 double dt_init, double dt_end) {
  if (dt_init < 0.0 || dt_end < 0.0 || !(dt_init + dt_end > 0.0))
    throw std::invalid_argument("double_support_segment: total duration must be positive");

  const Vec2 start = prev_zmp + std::exp(-omega * dt_init) * (xi_init_step - prev_zmp);
  const Vec2 end = cur_zmp + std::exp(omega * dt_end) * (xi_init_step - cur_zmp);
  const Vec2 v_start = omega * (start - prev_zmp);
  const Vec2 v_end = omega * (end - cur_zmp);

  DsSegment seg;
  seg.duration = dt_init + dt_end;
  seg.x = Cubic::hermite(start.x(), v_start.x(), end.x(), v_end.x(), seg.duration);
  seg.y = Cubic::hermite(start.y(), v_start.y(), end.y(), v_end.y(), seg.duration);
  return seg;
}

std::vector<ComSample> com_trajectory(std::span<const double> times,
                                      std::span<const Vec2> dcm,
                                      const Vec2& x0, double omega) {
  if (times.empty()) throw std::invalid_argument("com_trajectory: empty sample sequence");
  if (times.size() != dcm.size())
    throw std::invalid_argument("com_trajectory: time/DCM sample count mismatch");

  std::vector<ComSample> out(times.size());
  Vec2 x = x0;
  for (std::size_t k = 0; k < times.size(); ++k) {
    out[k].t = times[k];
    out[k].com = x;
    out[k].vel = -omega * (x - dcm[k]);
    if (k + 1 < times.size()) {
      const double h = times[k + 1] - times[k];
      if (!(h > 0.0)) throw std::invalid_argument("com_trajectory: timestamps must increase");
      // Exact update for xi linear on [t_k, t_k + h).
      const Vec2 slope = (dcm[k + 1] - dcm[k]) / h;
      const double decay = std::exp(-omega * h);
      x = decay * x + (1.0 - decay) * dcm[k] + (h - (1.0 - decay) / omega) * slope;
    }
  }
  return out;
}

}  // namespace gaitopt
