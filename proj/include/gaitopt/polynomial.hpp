#pragma once

#include <array>

namespace gaitopt {

/// Cubic polynomial, coefficients in ascending powers of t.
struct Cubic {
  std::array<double, 4> c{};

  double value(double t) const { return c[0] + t * (c[1] + t * (c[2] + t * c[3])); }
  double deriv(double t) const { return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]); }

  /// Hermite fit from position/velocity at t = 0 and t = T.
  static Cubic hermite(double p0, double v0, double p1, double v1, double T);
};

/// Quintic polynomial, coefficients in ascending powers of t.
struct Quintic {
  std::array<double, 6> c{};

  double value(double t) const;
  double deriv(double t) const;
  double accel(double t) const;

  /// Rest-to-rest profile over [0, T]: zero velocity and acceleration at both ends.
  static Quintic rest_to_rest(double p0, double p1, double T);

  /// Swing-height profile over [0, T]: zero velocity at both ends and at the
  /// midpoint, where the value equals apex.
  static Quintic swing_apex(double z0, double z1, double apex, double T);
};

}  // namespace gaitopt
