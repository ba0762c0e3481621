#include "gaitopt/polygon.hpp"

#include <algorithm>

namespace gaitopt {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool on_segment(const Vec2& p, const Vec2& a, const Vec2& b, double eps) {
  const Vec2 ab = b - a;
  const Vec2 ap = p - a;
  if (std::abs(cross2(ab, ap)) > eps * std::max(1.0, ab.norm())) return false;
  const double t = ab.dot(ap);
  return t >= -eps && t <= ab.squaredNorm() + eps;
}

double segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp(ab.dot(p - a) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

}  // namespace

SupportPolygon convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) { return a == b; }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) return SupportPolygon{points};

  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {  // upper chain
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return SupportPolygon{hull};
}

SupportPolygon support_polygon(Stance stance, const Pose& left_sole, const Pose& right_sole,
                               const std::array<Vec2, 4>& sole_vertices) {
  auto world_corners = [&sole_vertices](const Pose& sole, std::vector<Vec2>& out) {
    for (const Vec2& v : sole_vertices) {
      const Vec3 w = sole.p + sole.R * Vec3(v.x(), v.y(), 0.0);
      out.emplace_back(w.x(), w.y());
    }
  };
  std::vector<Vec2> pts;
  pts.reserve(8);
  if (stance != Stance::Right) world_corners(left_sole, pts);
  if (stance != Stance::Left) world_corners(right_sole, pts);
  return convex_hull(std::move(pts));
}

bool point_in_polygon(const Vec2& p, const SupportPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, v[i], v[(i + 1) % n], 1e-12)) return true;  // boundary counts as inside
  }
  int winding = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    if (a.y() <= p.y()) {
      if (b.y() > p.y() && cross2(b - a, p - a) > 0.0) ++winding;
    } else {
      if (b.y() <= p.y() && cross2(b - a, p - a) < 0.0) --winding;
    }
  }
  return winding != 0;
}

double distance_to_polygon(const Vec2& p, const SupportPolygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n == 0) throw std::invalid_argument("distance_to_polygon: empty polygon");
  if (n == 1) return (p - v[0]).norm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % n]));
  return best;
}

}  // namespace gaitopt
