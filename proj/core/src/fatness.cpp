#include "fracspec/fatness.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

#include "fracspec/geometry.hpp"
#include "fracspec/report.hpp"

namespace fracspec::fatness {

std::vector<Point> tile_centers(int k, double r, Point tile_center) {
  if (k < 1 || !(r > 0.0)) throw Error("tile_centers: need k >= 1, r > 0");
  const int delta = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k)))) + 1;
  std::vector<Point> centers;
  centers.reserve(4 * delta * delta);
  for (int m = 0; m < 2 * delta; ++m)
    for (int j = 0; j < 2 * delta; ++j) {
      const double ux = -5.0 * delta + 2.5 + 5.0 * j;
      const double uy = 5.0 * delta - 2.5 - 5.0 * m;
      centers.push_back({tile_center.x + r * ux, tile_center.y + r * uy});
    }
  return centers;
}

double lambda_k(int k) {
  if (k < 1) throw Error("lambda_k: k >= 1");
  if (k <= 3) return 1.0;
  const int root = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k))));
  return (root % 2 == 0) ? root / 2.0 : (root - 1) / 2.0;
}

namespace {

struct Lattice {
  const geometry::RasterDomain& dom;

  bool complement(int ix, int iy) const {
    if (ix < 0 || ix >= dom.nx || iy < 0 || iy >= dom.ny) return true;  // beyond the box
    if (!dom.mask[dom.index(ix, iy)]) return true;
    return dom.is_puncture_node(ix, iy);
  }
  Point pos(int ix, int iy) const { return dom.node(ix, iy); }
};

}  // namespace

FatnessCertificate fatness_certificate(const geometry::RasterDomain& dom, Point tile_center,
                                       int k, double r) {
  if (k < 1 || !(r > 0.0)) throw Error("fatness_certificate: bad k or r");
  FatnessCertificate cert;
  cert.k = k;
  cert.r = r;
  cert.h = dom.h;
  cert.delta = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k)))) + 1;
  cert.tile_center = tile_center;
  cert.tile_side = 10.0 * cert.delta * r;
  cert.centers = tile_centers(k, r, tile_center);
  cert.bound = std::sqrt(static_cast<double>(k)) * r / 4.0;

  const double h = dom.h;
  const Lattice lat{dom};

  // trivial case: the tile misses the domain entirely
  const double half = 0.5 * cert.tile_side;
  bool tile_meets_domain = false;
  {
    const int i0 = static_cast<int>(std::ceil((tile_center.x - half - dom.origin.x) / h - 1e-9));
    const int i1 = static_cast<int>(std::floor((tile_center.x + half - dom.origin.x) / h + 1e-9));
    const int j0 = static_cast<int>(std::ceil((tile_center.y - half - dom.origin.y) / h - 1e-9));
    const int j1 = static_cast<int>(std::floor((tile_center.y + half - dom.origin.y) / h + 1e-9));
    for (int j = std::max(0, j0); j <= std::min(dom.ny - 1, j1) && !tile_meets_domain; ++j)
      for (int i = std::max(0, i0); i <= std::min(dom.nx - 1, i1); ++i)
        if (dom.mask[dom.index(i, j)] && !dom.is_puncture_node(i, j)) {
          tile_meets_domain = true;
          break;
        }
    if (!tile_meets_domain) {
      cert.trivial_tile = true;
      for (int j = j0; j <= j1; ++j)
        for (int i = i0; i <= i1; ++i) cert.sigma.push_back({i, j});
      std::vector<Point> pts;
      for (auto [i, j] : cert.sigma) pts.push_back(lat.pos(i, j));
      cert.proj_e1 = geometry::project_points(pts, h, geometry::dir_e1());
      cert.proj_e2 = geometry::project_points(pts, h, geometry::dir_e2());
      return cert;
    }
  }

  const double cell_half = 2.5 * r;
  const double disk_rad = 1.5 * r;
  std::set<Cell> sigma_set;
  for (int id = 0; id < static_cast<int>(cert.centers.size()); ++id) {
    const Point P = cert.centers[id];
    const int jj = id % (2 * cert.delta), mm = id / (2 * cert.delta);
    // witness: lexicographically smallest complement node in the open disk
    const int i0 = static_cast<int>(std::ceil((P.x - disk_rad - dom.origin.x) / h - 1e-9));
    const int i1 = static_cast<int>(std::floor((P.x + disk_rad - dom.origin.x) / h + 1e-9));
    const int j0 = static_cast<int>(std::ceil((P.y - disk_rad - dom.origin.y) / h - 1e-9));
    const int j1 = static_cast<int>(std::floor((P.y + disk_rad - dom.origin.y) / h + 1e-9));
    bool found = false;
    Cell witness{0, 0};
    for (int i = i0; i <= i1 && !found; ++i)
      for (int j = j0; j <= j1; ++j) {
        if (norm(lat.pos(i, j) - P) >= disk_rad) continue;
        if (lat.complement(i, j)) {
          witness = {i, j};
          found = true;
          break;
        }
      }
    if (!found) throw NoWitnessError(jj, mm);
    cert.witnesses[id] = lat.pos(witness.first, witness.second);

    // complement component of the witness inside the closed cell, 8-connected
    auto in_cell = [&](int i, int j) {
      const Point p = lat.pos(i, j);
      return std::fabs(p.x - P.x) <= cell_half + 1e-9 * h &&
             std::fabs(p.y - P.y) <= cell_half + 1e-9 * h;
    };
    std::set<Cell> comp;
    std::deque<Cell> queue{witness};
    comp.insert(witness);
    bool reaches = false;
    while (!queue.empty()) {
      auto [ci, cj] = queue.front();
      queue.pop_front();
      const Point p = lat.pos(ci, cj);
      const double edge = cell_half - std::max(std::fabs(p.x - P.x), std::fabs(p.y - P.y));
      if (edge <= h + 1e-9 * h) reaches = true;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) continue;
          const Cell nb{ci + di, cj + dj};
          if (comp.count(nb) || !in_cell(nb.first, nb.second)) continue;
          if (!lat.complement(nb.first, nb.second)) continue;
          comp.insert(nb);
          queue.push_back(nb);
        }
    }
    cert.continua[id] = std::vector<Cell>(comp.begin(), comp.end());
    if (reaches) {
      cert.reliable.push_back(id);
      sigma_set.insert(comp.begin(), comp.end());
    }
  }
  cert.sigma.assign(sigma_set.begin(), sigma_set.end());
  std::vector<Point> pts;
  pts.reserve(cert.sigma.size());
  for (auto [i, j] : cert.sigma) pts.push_back(lat.pos(i, j));
  cert.proj_e1 = geometry::project_points(pts, h, geometry::dir_e1());
  cert.proj_e2 = geometry::project_points(pts, h, geometry::dir_e2());
  return cert;
}

FatnessCertificate fatness_certificate(const geometry::RasterDomain& dom, Point tile_center) {
  const double r = geometry::inradius(dom);
  const int k = geometry::topology_order(dom).k;
  return fatness_certificate(dom, tile_center, k, r);
}

std::string to_json(const FatnessCertificate& cert) {
  std::ostringstream os;
  os.precision(15);
  os << "{\n  \"k\": " << cert.k << ",\n  \"r\": " << cert.r
     << ",\n  \"delta\": " << cert.delta << ",\n  \"tile_center\": [" << cert.tile_center.x
     << ", " << cert.tile_center.y << "],\n  \"tile_side\": " << cert.tile_side
     << ",\n  \"bound\": " << cert.bound << ",\n  \"trivial\": "
     << (cert.trivial_tile ? "true" : "false") << ",\n  \"centers\": [";
  for (std::size_t i = 0; i < cert.centers.size(); ++i)
    os << (i ? ", " : "") << '[' << cert.centers[i].x << ", " << cert.centers[i].y << ']';
  os << "],\n  \"witnesses\": {";
  bool first = true;
  for (const auto& [id, p] : cert.witnesses) {
    os << (first ? "" : ", ") << '"' << id << "\": [" << p.x << ", " << p.y << ']';
    first = false;
  }
  os << "},\n  \"reliable\": [";
  for (std::size_t i = 0; i < cert.reliable.size(); ++i)
    os << (i ? ", " : "") << cert.reliable[i];
  // run-length encode sigma by rows: [iy, ix_start, ix_end]
  os << "],\n  \"sigma_rle\": [";
  first = true;
  std::size_t i = 0;
  while (i < cert.sigma.size()) {
    std::size_t e = i;
    while (e + 1 < cert.sigma.size() && cert.sigma[e + 1].first == cert.sigma[e].first &&
           cert.sigma[e + 1].second == cert.sigma[e].second + 1)
      ++e;
    os << (first ? "" : ", ") << '[' << cert.sigma[i].first << ", " << cert.sigma[i].second
       << ", " << cert.sigma[e].second << ']';
    first = false;
    i = e + 1;
  }
  os << "],\n  \"proj_e1\": " << cert.proj_e1.length
     << ",\n  \"proj_e2\": " << cert.proj_e2.length << ",\n  \"max_projection\": "
     << cert.max_projection() << "\n}\n";
  return os.str();
}

std::string to_svg(const FatnessCertificate& cert, const geometry::RasterDomain& dom) {
  const double half = 0.5 * cert.tile_side;
  const double pad = 0.05 * cert.tile_side;
  const double world = cert.tile_side + 2 * pad;
  const double S = 640.0 / world;
  auto X = [&](double x) { return (x - (cert.tile_center.x - half - pad)) * S; };
  auto Y = [&](double y) { return (cert.tile_center.y + half + pad - y) * S; };
  report::Svg svg(640, 640);
  // domain mask pixels
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      if (dom.mask[dom.index(i, j)]) {
        const Point p = dom.node(i, j);
        if (std::fabs(p.x - cert.tile_center.x) > half + pad ||
            std::fabs(p.y - cert.tile_center.y) > half + pad)
          continue;
        svg.rect(X(p.x - 0.5 * dom.h), Y(p.y + 0.5 * dom.h), dom.h * S, dom.h * S, "#dce9f5");
      }
  // tile frame and cells
  svg.rect(X(cert.tile_center.x - half), Y(cert.tile_center.y + half), cert.tile_side * S,
           cert.tile_side * S, "none", "#333333", 2.0);
  for (std::size_t id = 0; id < cert.centers.size(); ++id) {
    const Point P = cert.centers[id];
    const bool rel = std::find(cert.reliable.begin(), cert.reliable.end(),
                               static_cast<int>(id)) != cert.reliable.end();
    svg.rect(X(P.x - 2.5 * cert.r), Y(P.y + 2.5 * cert.r), 5.0 * cert.r * S, 5.0 * cert.r * S,
             rel ? "#e8f8e8" : "none", "#777777", 1.0, rel ? 0.5 : 1.0);
    svg.circle(X(P.x), Y(P.y), 1.5 * cert.r * S, "none", "#aa8800", 1.0);
    svg.circle(X(P.x), Y(P.y), 2.0, "#aa8800");
  }
  // sigma pixels
  for (auto [i, j] : cert.sigma) {
    const Point p{dom.origin.x + i * dom.h, dom.origin.y + j * dom.h};
    svg.rect(X(p.x - 0.5 * dom.h), Y(p.y + 0.5 * dom.h), dom.h * S, dom.h * S, "#c03020");
  }
  // witnesses
  for (const auto& [id, p] : cert.witnesses) svg.circle(X(p.x), Y(p.y), 3.0, "#2040c0");
  svg.text(10, 20, "k=" + std::to_string(cert.k) + " delta=" + std::to_string(cert.delta) +
                       " maxproj=" + report::fmt(cert.max_projection(), 6) +
                       " bound=" + report::fmt(cert.bound, 6));
  return svg.str();
}

}  // namespace fracspec::fatness
