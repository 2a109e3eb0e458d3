#pragma once

#include <vector>

#include "fracspec/common.hpp"

namespace fracspec::geometry {

/// Strictly convex polygon with counter-clockwise vertices and an interior
/// base point. d_K / D_K are the min / max distances from the base point to
/// the boundary; smooth bodies are approximated by fine polygons.
struct ConvexBody {
  ConvexBody(std::vector<Point> vertices, Point base);

  std::vector<Point> vertices;
  Point x0;
  double dK = 0.0;
  double DK = 0.0;
};

ConvexBody regular_polygon(int n, double radius, Point center = {0.0, 0.0});

/// Minkowski gauge j_K(x) = inf{ l > 0 : x in l(K - x0) + x0 }, by
/// ray-polygon intersection. Zero at the base point, positively homogeneous.
double minkowski_gauge(const ConvexBody& K, Point x);

/// Radial map onto disks: fixes x0, sends r(K - x0) + x0 onto B_r(x0).
Point phi_map(const ConvexBody& K, Point x);

/// Inverse of phi_map.
Point phi_inverse(const ConvexBody& K, Point y);

/// (L_K, M_K) = (2/d_K, D_K (2 + D_K/d_K)): Lipschitz constants of the map
/// and of its inverse.
std::pair<double, double> lipschitz_constants(const ConvexBody& K);

}  // namespace fracspec::geometry
