#pragma once

#include <array>
#include <vector>

#include "gaitopt/types.hpp"

namespace gaitopt {

/// Convex ground-contact polygon, counterclockwise vertex order.
struct SupportPolygon {
  std::vector<Vec2> vertices;
};

/// Monotone-chain convex hull; collinear boundary points are dropped.
SupportPolygon convex_hull(std::vector<Vec2> points);

/// Maps the sole corners of the stance feet to the ground plane; double
/// support takes the convex hull of both soles.
SupportPolygon support_polygon(Stance stance, const Pose& left_sole, const Pose& right_sole,
                               const std::array<Vec2, 4>& sole_vertices);

/// Winding-number containment test; points on the boundary count as inside.
bool point_in_polygon(const Vec2& p, const SupportPolygon& poly);

/// Minimum Euclidean distance from p to the polygon boundary (edges as
/// segments), regardless of containment.
double distance_to_polygon(const Vec2& p, const SupportPolygon& poly);

}  // namespace gaitopt
