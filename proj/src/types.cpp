#include "gaitopt/types.hpp"

namespace gaitopt {

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

const char* to_string(Phase p) {
  return p == Phase::SingleSupport ? "single_support" : "double_support";
}

const char* to_string(Stance s) {
  switch (s) {
    case Stance::Left: return "left";
    case Stance::Right: return "right";
    default: return "both";
  }
}

Phase phase_from_string(const std::string& s) {
  if (s == "single_support") return Phase::SingleSupport;
  if (s == "double_support") return Phase::DoubleSupport;
  throw std::invalid_argument("unknown phase: " + s);
}

Stance stance_from_string(const std::string& s) {
  if (s == "left") return Stance::Left;
  if (s == "right") return Stance::Right;
  if (s == "both") return Stance::Both;
  throw std::invalid_argument("unknown stance: " + s);
}

void GaitParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("GaitParams: " + what); };
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0,1)");
  if (!(r_ds > 0.0 && r_ds < 1.0)) fail("r_ds must lie in (0,1)");
  if (!(t_step > 0.0)) fail("t_step must be positive");
  if (!(z0 > 0.0)) fail("z0 must be positive");
  if (!(h_ankle > 0.0)) fail("h_ankle must be positive");
  if (!(speed >= 0.0)) fail("speed must be non-negative");
  if (!std::isfinite(alpha) || !std::isfinite(r_ds) || !std::isfinite(t_step) ||
      !std::isfinite(z0) || !std::isfinite(h_ankle) || !std::isfinite(speed))
    fail("parameters must be finite");
}

}  // namespace gaitopt
