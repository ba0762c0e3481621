#include "gaitopt/polynomial.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace gaitopt {

Cubic Cubic::hermite(double p0, double v0, double p1, double v1, double T) {
  if (T <= 0.0) throw std::invalid_argument("Cubic::hermite: duration must be positive");
  Cubic out;
  const double d = p1 - p0;
  out.c[0] = p0;
  out.c[1] = v0;
  out.c[2] = (3.0 * d - (2.0 * v0 + v1) * T) / (T * T);
  out.c[3] = (-2.0 * d + (v0 + v1) * T) / (T * T * T);
  return out;
}

double Quintic::value(double t) const {
  return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
}

double Quintic::deriv(double t) const {
  return c[1] + t * (2.0 * c[2] + t * (3.0 * c[3] + t * (4.0 * c[4] + t * 5.0 * c[5])));
}

double Quintic::accel(double t) const {
  return 2.0 * c[2] + t * (6.0 * c[3] + t * (12.0 * c[4] + t * 20.0 * c[5]));
}

Quintic Quintic::rest_to_rest(double p0, double p1, double T) {
  if (T <= 0.0) throw std::invalid_argument("Quintic::rest_to_rest: duration must be positive");
  const double d = p1 - p0;
  const double T3 = T * T * T;
  Quintic out;
  out.c = {p0, 0.0, 0.0, 10.0 * d / T3, -15.0 * d / (T3 * T), 6.0 * d / (T3 * T * T)};
  return out;
}

Quintic Quintic::swing_apex(double z0, double z1, double apex, double T) {
  if (T <= 0.0) throw std::invalid_argument("Quintic::swing_apex: duration must be positive");
  // Solve in normalized time tau = t/T (well conditioned), then rescale.
  // Conditions: value at 0, T/2, T; zero slope at 0, T/2, T.
  Eigen::Matrix<double, 6, 6> M;
  Eigen::Matrix<double, 6, 1> rhs;
  auto value_row = [&](int row, double tau) {
    double p = 1.0;
    for (int k = 0; k < 6; ++k) { M(row, k) = p; p *= tau; }
  };
  auto slope_row = [&](int row, double tau) {
    M(row, 0) = 0.0;
    double p = 1.0;
    for (int k = 1; k < 6; ++k) { M(row, k) = k * p; p *= tau; }
  };
  value_row(0, 0.0); rhs(0) = z0;
  slope_row(1, 0.0); rhs(1) = 0.0;
  value_row(2, 0.5); rhs(2) = apex;
  slope_row(3, 0.5); rhs(3) = 0.0;
  value_row(4, 1.0); rhs(4) = z1;
  slope_row(5, 1.0); rhs(5) = 0.0;
  const Eigen::Matrix<double, 6, 1> a = M.fullPivLu().solve(rhs);

  Quintic out;
  double scale = 1.0;
  for (int k = 0; k < 6; ++k) { out.c[k] = a(k) * scale; scale /= T; }
  return out;
}

}  // namespace gaitopt
