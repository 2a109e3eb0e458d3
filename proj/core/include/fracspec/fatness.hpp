#pragma once

#include <map>
#include <vector>

#include "fracspec/geometry.hpp"

namespace fracspec::fatness {

/// Lattice node on the extended grid (indices may leave the raster box; every
/// node outside the box is complement).
using Cell = std::pair<int, int>;

/// Constructive witness that the complement of a multiply connected raster is
/// locally fat: per-cell witness points and complement continua inside an
/// axis-aligned tile of side 10*delta*r, whose union has a long axis
/// projection.
struct FatnessCertificate {
  int k = 0;
  double r = 0.0;
  int delta = 0;             // floor(sqrt k) + 1
  Point tile_center;
  double tile_side = 0.0;    // 10 * delta * r
  std::vector<Point> centers;            // 4 delta^2 cell centers
  std::map<int, Point> witnesses;        // cell id -> witness point
  std::vector<int> reliable;             // cell ids whose continuum reaches the cell boundary
  std::map<int, std::vector<Cell>> continua;  // cell id -> clipped complement component
  std::vector<Cell> sigma;               // union of reliable continua
  geometry::ProjectionResult proj_e1;
  geometry::ProjectionResult proj_e2;
  double bound = 0.0;        // sqrt(k) r / 4
  bool trivial_tile = false; // tile disjoint from the domain: sigma = whole tile
  double h = 0.0;

  double max_projection() const { return std::max(proj_e1.length, proj_e2.length); }
};

/// Cell centers of the tile construction, in tile coordinates scaled by r and
/// translated to tile_center. Row-major top-down: id = m * 2 delta + j.
std::vector<Point> tile_centers(int k, double r, Point tile_center);

/// Reliable-square count floor of the construction.
double lambda_k(int k);

/// Full certificate for the tile centered at tile_center (side 10 delta r
/// with r = inradius, k = topological order, both measured from dom).
FatnessCertificate fatness_certificate(const geometry::RasterDomain& dom, Point tile_center);

/// Same with precomputed k and r (pipeline use).
FatnessCertificate fatness_certificate(const geometry::RasterDomain& dom, Point tile_center,
                                       int k, double r);

/// JSON serialization (centers, witnesses, sigma as run-length rows,
/// projections).
std::string to_json(const FatnessCertificate& cert);

/// Figure-style SVG rendering of the tile, cells, witness disks and sigma.
std::string to_svg(const FatnessCertificate& cert, const geometry::RasterDomain& dom);

}  // namespace fracspec::fatness
