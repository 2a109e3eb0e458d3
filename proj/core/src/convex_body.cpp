#include "fracspec/convex_body.hpp"

#include <cmath>
#include <limits>

namespace fracspec::geometry {

namespace {

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
  return norm(p - (a + t * ab));
}

}  // namespace

ConvexBody::ConvexBody(std::vector<Point> verts, Point base)
    : vertices(std::move(verts)), x0(base) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error("convex body: need at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n], c = vertices[(i + 2) % n];
    if (cross(b - a, c - b) <= 0.0)
      throw Error("convex body: vertices must be strictly convex, counter-clockwise");
  }
  // base point strictly interior: positive side of every edge
  dK = std::numeric_limits<double>::infinity();
  DK = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i], b = vertices[(i + 1) % n];
    if (cross(b - a, x0 - a) <= 0.0) throw Error("convex body: base point not interior");
    dK = std::min(dK, point_segment_distance(x0, a, b));
    DK = std::max(DK, norm(vertices[i] - x0));
  }
}

ConvexBody regular_polygon(int n, double radius, Point center) {
  std::vector<Point> v(n);
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * M_PI * i / n;
    v[i] = {center.x + radius * std::cos(t), center.y + radius * std::sin(t)};
  }
  return ConvexBody(std::move(v), center);
}

namespace {

// distance from x0 to the boundary along unit direction u (unique by convexity)
double boundary_ray(const ConvexBody& K, Point u) {
  const std::size_t n = K.vertices.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = K.vertices[i] - K.x0;
    const Point b = K.vertices[(i + 1) % n] - K.x0;
    const Point e = b - a;
    const double denom = cross(u, e);
    if (std::fabs(denom) < 1e-300) continue;  // ray parallel to edge
    const double t = cross(a, e) / denom;   // ray parameter
    const double sgm = cross(a, u) / denom; // segment parameter
    if (t > 0.0 && sgm >= -1e-12 && sgm <= 1.0 + 1e-12) best = std::min(best, t);
  }
  if (!std::isfinite(best)) throw Error("convex body: ray-boundary intersection failed");
  return best;
}

}  // namespace

double minkowski_gauge(const ConvexBody& K, Point x) {
  const Point d = x - K.x0;
  const double r = norm(d);
  if (r == 0.0) return 0.0;
  const Point u = (1.0 / r) * d;
  return r / boundary_ray(K, u);
}

Point phi_map(const ConvexBody& K, Point x) {
  const Point d = x - K.x0;
  const double r = norm(d);
  if (r == 0.0) return K.x0;
  return K.x0 + (minkowski_gauge(K, x) / r) * d;
}

Point phi_inverse(const ConvexBody& K, Point y) {
  const Point d = y - K.x0;
  const double r = norm(d);
  if (r == 0.0) return K.x0;
  return K.x0 + (r / minkowski_gauge(K, y)) * d;
}

std::pair<double, double> lipschitz_constants(const ConvexBody& K) {
  return {2.0 / K.dK, K.DK * (2.0 + K.DK / K.dK)};
}

}  // namespace fracspec::geometry
