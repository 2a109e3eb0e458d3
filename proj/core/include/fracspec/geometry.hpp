#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracspec/common.hpp"

namespace fracspec::geometry {

/// Axis-aligned node grid with an inclusion mask. Node (i,j) sits at
/// origin + (i*h, j*h); its pixel footprint is the h x h square centered there.
/// The outermost node ring is always outside (zero-extension contract).
/// Punctures are isolated removed points, snapped to inside nodes; they count
/// toward the topological order and act as obstacles for the inradius, but by
/// default they are not removed from the eigenvalue mask.
struct RasterDomain {
  Point origin;
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<std::uint8_t> mask;  // nx*ny, row-major: mask[j*nx + i]
  std::vector<Point> punctures;    // node-snapped coordinates
  std::string label;

  bool inside(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny && mask[static_cast<std::size_t>(j) * nx + i];
  }
  Point node(int i, int j) const { return {origin.x + i * h, origin.y + j * h}; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  int count_inside() const;
  bool is_puncture_node(int i, int j) const;

  /// Throws Error when an invariant is broken (h <= 0, mask size, boundary
  /// ring not outside, puncture off an inside node).
  void validate() const;
};

struct TopologyReport {
  int k = 0;  // order: bounded complement components + 1 + punctures
  std::vector<std::vector<std::pair<int, int>>> bounded_components;
  bool has_unbounded = true;
};

struct Direction {
  explicit Direction(Point v);
  Point omega;  // unit within 1e-12
  bool axis_aligned() const;
};

inline Direction dir_e1() { return Direction{{1.0, 0.0}}; }
inline Direction dir_e2() { return Direction{{0.0, 1.0}}; }

struct ProjectionResult {
  Point omega;
  std::vector<std::pair<double, double>> intervals;  // sorted, disjoint
  double length = 0.0;
  bool approximate = false;  // set for non-axis directions
};

/// Exact Euclidean distance (in length units) from every node to the nearest
/// complement-or-puncture node; two-pass squared-distance transform.
std::vector<double> distance_to_complement(const RasterDomain& dom);

/// Max over inside nodes of the distance to the nearest outside node or
/// puncture. O(h)-accurate for Lipschitz rasterizations. Throws on empty mask.
double inradius(const RasterDomain& dom);

/// Complement components by 8-connected flood fill; components touching the
/// bounding-box frame merge into the unbounded one. k per the type invariant.
TopologyReport topology_order(const RasterDomain& dom);

/// Projection of a node set onto the line orthogonal to dir; each node
/// projects to an interval of width h centered at its projected coordinate.
/// Axis directions are exact; others use the flagged approximate path.
ProjectionResult project(const std::vector<std::pair<int, int>>& nodes,
                         const RasterDomain& dom, const Direction& dir);

/// Same, for explicit points (used for node sets living on an extended
/// lattice outside the raster box).
ProjectionResult project_points(const std::vector<Point>& pts, double h,
                                const Direction& dir);

}  // namespace fracspec::geometry
