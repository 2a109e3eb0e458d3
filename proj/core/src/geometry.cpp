#include "fracspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace fracspec::geometry {

int RasterDomain::count_inside() const {
  int c = 0;
  for (auto m : mask) c += m ? 1 : 0;
  return c;
}

bool RasterDomain::is_puncture_node(int i, int j) const {
  const Point p = node(i, j);
  for (const Point& q : punctures)
    if (std::fabs(p.x - q.x) < 0.25 * h && std::fabs(p.y - q.y) < 0.25 * h) return true;
  return false;
}

void RasterDomain::validate() const {
  if (!(h > 0.0)) throw Error("raster: h must be positive");
  if (nx < 3 || ny < 3) throw Error("raster: grid too small");
  if (mask.size() != static_cast<std::size_t>(nx) * ny)
    throw Error("raster: mask dimensions do not match nx*ny");
  for (int i = 0; i < nx; ++i)
    if (mask[index(i, 0)] || mask[index(i, ny - 1)])
      throw Error("raster: boundary ring must be outside");
  for (int j = 0; j < ny; ++j)
    if (mask[index(0, j)] || mask[index(nx - 1, j)])
      throw Error("raster: boundary ring must be outside");
  for (const Point& p : punctures) {
    const int i = static_cast<int>(std::lround((p.x - origin.x) / h));
    const int j = static_cast<int>(std::lround((p.y - origin.y) / h));
    if (!inside(i, j)) throw Error("raster: puncture not at an inside node");
    const Point q = node(i, j);
    if (std::fabs(q.x - p.x) > 1e-9 * h || std::fabs(q.y - p.y) > 1e-9 * h)
      throw Error("raster: puncture not snapped to a node");
  }
}

Direction::Direction(Point v) : omega(v) {
  const double n = norm(v);
  if (n == 0.0) throw Error("direction: zero vector");
  if (std::fabs(n - 1.0) > 1e-12) omega = (1.0 / n) * v;
}

bool Direction::axis_aligned() const {
  return (std::fabs(omega.x) < 1e-14 && std::fabs(std::fabs(omega.y) - 1.0) < 1e-12) ||
         (std::fabs(omega.y) < 1e-14 && std::fabs(std::fabs(omega.x) - 1.0) < 1e-12);
}

namespace {

// 1D squared-distance transform (lower envelope of parabolas); finite inputs.
void edt_1d(const std::vector<double>& f, std::vector<double>& d) {
  const int n = static_cast<int>(f.size());
  d.assign(n, 0.0);
  std::vector<int> v(n);
  std::vector<double> z(n + 1);
  int k = 0;
  v[0] = 0;
  z[0] = -std::numeric_limits<double>::infinity();
  z[1] = std::numeric_limits<double>::infinity();
  for (int q = 1; q < n; ++q) {
    double s = ((f[q] + static_cast<double>(q) * q) - (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
               (2.0 * q - 2.0 * v[k]);
    while (s <= z[k]) {
      --k;
      s = ((f[q] + static_cast<double>(q) * q) - (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
          (2.0 * q - 2.0 * v[k]);
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    d[q] = (q - static_cast<double>(v[k])) * (q - v[k]) + f[v[k]];
  }
}

}  // namespace

std::vector<double> distance_to_complement(const RasterDomain& dom) {
  const int nx = dom.nx, ny = dom.ny;
  // squared distances in node units; boundary ring guarantees a source in
  // every column, so BIG never survives to the output
  const double BIG = 4.0 * (static_cast<double>(nx) * nx + static_cast<double>(ny) * ny);
  std::vector<double> g(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      g[dom.index(i, j)] = dom.mask[dom.index(i, j)] ? BIG : 0.0;
  for (const Point& p : dom.punctures) {
    const int i = static_cast<int>(std::lround((p.x - dom.origin.x) / dom.h));
    const int j = static_cast<int>(std::lround((p.y - dom.origin.y) / dom.h));
    if (i >= 0 && i < nx && j >= 0 && j < ny) g[dom.index(i, j)] = 0.0;
  }
  std::vector<double> tmp(static_cast<std::size_t>(nx) * ny);
  std::vector<double> buf, out;
  for (int i = 0; i < nx; ++i) {
    buf.assign(ny, 0.0);
    for (int j = 0; j < ny; ++j) buf[j] = g[dom.index(i, j)];
    edt_1d(buf, out);
    for (int j = 0; j < ny; ++j) tmp[dom.index(i, j)] = std::min(out[j], BIG);
  }
  std::vector<double> dist(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    buf.assign(nx, 0.0);
    for (int i = 0; i < nx; ++i) buf[i] = tmp[dom.index(i, j)];
    edt_1d(buf, out);
    for (int i = 0; i < nx; ++i) dist[dom.index(i, j)] = std::sqrt(out[i]) * dom.h;
  }
  return dist;
}

double inradius(const RasterDomain& dom) {
  dom.validate();
  if (dom.count_inside() == 0) throw Error("inradius: empty domain");
  const auto dist = distance_to_complement(dom);
  double r = 0.0;
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      if (dom.mask[dom.index(i, j)]) r = std::max(r, dist[dom.index(i, j)]);
  return r;
}

TopologyReport topology_order(const RasterDomain& dom) {
  dom.validate();
  const int nx = dom.nx, ny = dom.ny;
  std::vector<int> comp(static_cast<std::size_t>(nx) * ny, -1);
  TopologyReport rep;
  int next = 0;
  std::deque<std::pair<int, int>> queue;
  std::vector<std::vector<std::pair<int, int>>> comps;
  std::vector<bool> touches_frame;
  for (int j0 = 0; j0 < ny; ++j0)
    for (int i0 = 0; i0 < nx; ++i0) {
      if (dom.mask[dom.index(i0, j0)] || comp[dom.index(i0, j0)] >= 0) continue;
      const int id = next++;
      comps.emplace_back();
      touches_frame.push_back(false);
      queue.push_back({i0, j0});
      comp[dom.index(i0, j0)] = id;
      while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        comps[id].push_back({i, j});
        if (i == 0 || i == nx - 1 || j == 0 || j == ny - 1) touches_frame[id] = true;
        for (int dj = -1; dj <= 1; ++dj)
          for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            const int i2 = i + di, j2 = j + dj;
            if (i2 < 0 || i2 >= nx || j2 < 0 || j2 >= ny) continue;
            if (dom.mask[dom.index(i2, j2)] || comp[dom.index(i2, j2)] >= 0) continue;
            comp[dom.index(i2, j2)] = id;
            queue.push_back({i2, j2});
          }
      }
    }
  for (int id = 0; id < next; ++id)
    if (!touches_frame[id]) rep.bounded_components.push_back(std::move(comps[id]));
  rep.has_unbounded = true;
  rep.k = static_cast<int>(rep.bounded_components.size()) + 1 +
          static_cast<int>(dom.punctures.size());
  return rep;
}

namespace {

ProjectionResult merge_intervals(std::vector<double> centers, double h, Point omega,
                                 bool approx) {
  ProjectionResult res;
  res.omega = omega;
  res.approximate = approx;
  if (centers.empty()) return res;
  std::sort(centers.begin(), centers.end());
  double lo = centers.front() - 0.5 * h, hi = centers.front() + 0.5 * h;
  const double fuse = 1e-9 * h;
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double a = centers[i] - 0.5 * h, b = centers[i] + 0.5 * h;
    if (a <= hi + fuse) {
      hi = std::max(hi, b);
    } else {
      res.intervals.emplace_back(lo, hi);
      lo = a;
      hi = b;
    }
  }
  res.intervals.emplace_back(lo, hi);
  for (auto [a, b] : res.intervals) res.length += b - a;
  return res;
}

}  // namespace

ProjectionResult project_points(const std::vector<Point>& pts, double h,
                                const Direction& dir) {
  // coordinate on the line orthogonal to omega
  const Point perp{-dir.omega.y, dir.omega.x};
  const bool axis = dir.axis_aligned();
  std::vector<double> centers;
  centers.reserve(pts.size());
  for (const Point& p : pts) centers.push_back(dot(p, perp));
  return merge_intervals(std::move(centers), h, dir.omega, !axis);
}

ProjectionResult project(const std::vector<std::pair<int, int>>& nodes,
                         const RasterDomain& dom, const Direction& dir) {
  std::vector<Point> pts;
  pts.reserve(nodes.size());
  for (auto [i, j] : nodes) pts.push_back(dom.node(i, j));
  return project_points(pts, dom.h, dir);
}

}  // namespace fracspec::geometry
