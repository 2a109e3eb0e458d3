#include "fracspec/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace fracspec::pipeline {

void FamilySpec::validate() const {
  if (!(h > 0.0)) throw Error("family: h must be positive");
  if (kind == Kind::kShellSlug && k < 2) throw Error("family: shell_slug needs k >= 2");
  if (kind == Kind::kCombWindow && k < 1) throw Error("family: comb needs k >= 1");
  if (kind == Kind::kAnnulus && !(inner_radius > 0.0 && inner_radius < radius))
    throw Error("family: annulus needs 0 < inner < outer radius");
}

std::pair<int, int> shell_parameters(int k) {
  if (k < 2) throw Error("shell_parameters: k >= 2");
  const int n_k = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k - 1))));
  return {n_k, (k - 1) - n_k * n_k};
}

namespace {

geometry::RasterDomain raster_from_region(double x_lo, double x_hi, double y_lo, double y_hi,
                                          double h, double margin,
                                          const std::function<bool(Point)>& inside,
                                          const std::string& label) {
  geometry::RasterDomain dom;
  dom.h = h;
  const int mcells = std::max(1, static_cast<int>(std::ceil(margin / h)));
  dom.origin = {x_lo - mcells * h, y_lo - mcells * h};
  dom.nx = static_cast<int>(std::ceil((x_hi - x_lo) / h - 1e-9)) + 2 * mcells + 1;
  dom.ny = static_cast<int>(std::ceil((y_hi - y_lo) / h - 1e-9)) + 2 * mcells + 1;
  dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
  for (int j = 1; j + 1 < dom.ny; ++j)
    for (int i = 1; i + 1 < dom.nx; ++i)
      if (inside(dom.node(i, j))) dom.mask[dom.index(i, j)] = 1;
  dom.label = label;
  return dom;
}

void snap_puncture(geometry::RasterDomain& dom, Point p) {
  const int i = static_cast<int>(std::lround((p.x - dom.origin.x) / dom.h));
  const int j = static_cast<int>(std::lround((p.y - dom.origin.y) / dom.h));
  if (!dom.inside(i, j)) throw Error("puncture must snap to an inside node");
  dom.punctures.push_back(dom.node(i, j));
}

}  // namespace

geometry::RasterDomain build_family(const FamilySpec& spec) {
  spec.validate();
  const double h = spec.h;
  switch (spec.kind) {
    case FamilySpec::Kind::kSquare: {
      const double L = spec.side;
      return raster_from_region(
          0.0, L, 0.0, L, h, spec.margin,
          [L](Point p) { return p.x > 0 && p.x < L && p.y > 0 && p.y < L; }, "square");
    }
    case FamilySpec::Kind::kDisk: {
      const double R = spec.radius;
      return raster_from_region(
          -R, R, -R, R, h, spec.margin, [R](Point p) { return norm(p) < R; }, "disk");
    }
    case FamilySpec::Kind::kAnnulus: {
      const double R = spec.radius, r0 = spec.inner_radius;
      return raster_from_region(
          -R, R, -R, R, h, spec.margin,
          [R, r0](Point p) {
            const double d = norm(p);
            return d < R && d > r0;
          },
          "annulus");
    }
    case FamilySpec::Kind::kShellSlug: {
      const auto [n_k, m_k] = shell_parameters(spec.k);
      const double W = std::max(n_k, m_k);
      auto dom = raster_from_region(
          0.0, std::max(W, 1.0), m_k > 0 ? -1.0 : 0.0, std::max(n_k, 1), h, spec.margin,
          [n_k = n_k, m_k = m_k, h](Point p) {
            const bool shell = p.x > 0 && p.x < n_k && p.y > 0 && p.y < n_k;
            const bool slug = p.x > 0 && p.x < m_k && p.y > -1 && p.y < 0;
            const bool interface_seg =
                std::fabs(p.y) < 0.25 * h && p.x > 0 && p.x < std::min(n_k, m_k);
            return shell || slug || interface_seg;
          },
          "shell_slug_k" + std::to_string(spec.k));
      for (int i = 0; i < n_k; ++i)
        for (int j = 0; j < n_k; ++j) snap_puncture(dom, {i + 0.5, j + 0.5});
      for (int i = 0; i < m_k; ++i) snap_puncture(dom, {i + 0.5, -0.5});
      return dom;
    }
    case FamilySpec::Kind::kCombWindow: {
      const double W = spec.comb_halfwidth;
      const double y_lo = -spec.comb_below, y_hi = spec.k - 1 + spec.comb_above;
      if (spec.k > 1 && y_hi < spec.k - 1) throw Error("comb window too small for k");
      auto dom = raster_from_region(
          -W, W, y_lo, y_hi, h, spec.margin,
          [](Point) { return true; }, "comb_k" + std::to_string(spec.k));
      // carve the teeth: rows at integer heights with |x| >= 1, one node thick,
      // extended to the window edges; interior strictly between teeth
      for (int j = 0; j < dom.ny; ++j)
        for (int i = 0; i < dom.nx; ++i) {
          const Point p = dom.node(i, j);
          const double frac = p.y - std::round(p.y);
          const bool on_tooth_row = std::fabs(frac) < 0.25 * h;
          const bool in_window = p.x > -W && p.x < W && p.y > y_lo && p.y < y_hi;
          bool inside = in_window;
          if (on_tooth_row && std::fabs(p.x) >= 1.0 - 1e-12) inside = false;
          if (!in_window) inside = false;
          dom.mask[dom.index(i, j)] = inside && i > 0 && i + 1 < dom.nx && j > 0 &&
                                      j + 1 < dom.ny;
        }
      for (int i = 1; i < spec.k; ++i) snap_puncture(dom, {0.0, static_cast<double>(i)});
      return dom;
    }
    case FamilySpec::Kind::kRandomPerforated: {
      std::mt19937 rng(spec.seed);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      struct Hole {
        Point c;
        double r;
      };
      std::vector<Hole> holes;
      for (int t = 0; t < spec.hole_count; ++t)
        holes.push_back({{0.12 + 0.76 * U(rng), 0.12 + 0.76 * U(rng)}, 0.02 + 0.05 * U(rng)});
      return raster_from_region(
          0.0, 1.0, 0.0, 1.0, h, spec.margin,
          [holes](Point p) {
            if (!(p.x > 0 && p.x < 1 && p.y > 0 && p.y < 1)) return false;
            for (const auto& hole : holes)
              if (norm(p - hole.c) < hole.r) return false;
            return true;
          },
          "random_perforated");
    }
  }
  throw Error("build_family: unknown kind");
}

LowerBoundCertificate lower_bound_certificate(const geometry::RasterDomain& dom, double s,
                                              const constants::ConstantsTable& table,
                                              const CertificateOptions& opt) {
  if (!(s > 0.5 && s < 1.0)) throw Error("lower_bound_certificate: requires 1/2 < s < 1");
  LowerBoundCertificate cert;
  cert.s = s;
  cert.r_omega = geometry::inradius(dom);
  cert.k = geometry::topology_order(dom).k;
  const double r = cert.r_omega;
  const int k = cert.k;
  const int delta = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k)))) + 1;

  const double m_s = constants::morrey_m(s);
  const double a_dir = table.a_dir.value;
  const double phi22 = table.phi22.value;
  if (!(a_dir > 0.0 && phi22 > 0.0)) throw Error("certificate: missing constants");
  cert.heuristic = table.a_dir.provenance == constants::Provenance::kEstimated ||
                   table.phi22.provenance == constants::Provenance::kEstimated;
  cert.constants_used.morrey = m_s;
  cert.constants_used.a_dir = a_dir;
  cert.constants_used.phi22 = phi22;
  cert.constants_used.a_dir_prov = constants::to_string(table.a_dir.provenance);
  cert.constants_used.phi22_prov = constants::to_string(table.phi22.provenance);
  cert.constants_used.morrey_prov = "quadrature";

  // tiles of side 10 delta r covering the bounding box, anchored at the origin
  const double side = 10.0 * delta * r;
  const double x_lo = dom.origin.x, x_hi = dom.origin.x + (dom.nx - 1) * dom.h;
  const double y_lo = dom.origin.y, y_hi = dom.origin.y + (dom.ny - 1) * dom.h;
  const int ti0 = static_cast<int>(std::floor(x_lo / side));
  const int ti1 = static_cast<int>(std::floor(x_hi / side));
  const int tj0 = static_cast<int>(std::floor(y_lo / side));
  const int tj1 = static_cast<int>(std::floor(y_hi / side));

  double min_tile_bound = std::numeric_limits<double>::infinity();
  for (int tj = tj0; tj <= tj1; ++tj)
    for (int ti = ti0; ti <= ti1; ++ti) {
      const Point c{(ti + 0.5) * side, (tj + 0.5) * side};
      // does the tile meet the domain?
      bool meets = false;
      for (int j = 0; j < dom.ny && !meets; ++j)
        for (int i = 0; i < dom.nx; ++i) {
          const Point p = dom.node(i, j);
          if (dom.mask[dom.index(i, j)] && std::fabs(p.x - c.x) <= 0.5 * side &&
              std::fabs(p.y - c.y) <= 0.5 * side) {
            meets = true;
            break;
          }
        }
      if (!meets) continue;
      TileRecord rec;
      rec.ti = ti;
      rec.tj = tj;
      rec.cert = fatness::fatness_certificate(dom, c, k, r);
      const double proj = rec.cert.max_projection();
      // capacity of the tile's Dirichlet region relative to B_{2 * 5 delta r}:
      // analytic chain (projection bound with the a-priori corner distance) or
      // a direct obstacle solve on a local grid
      const double R = opt.R_over_r * 5.0 * delta * r;
      if (!opt.capacity_via_qp) {
        const double dist_factor =
            std::pow(50.0 * (2.0 - std::sqrt(2.0)), (1.0 - 2.0 * s) / 2.0) *
            std::pow(delta * r, 1.0 - 2.0 * s);
        rec.cap_lower = (m_s / a_dir) * dist_factor * proj;
      } else {
        // local ambient raster covering B_R around the tile center
        geometry::RasterDomain ball;
        ball.h = dom.h;
        const int halfn = static_cast<int>(std::ceil(R / dom.h)) + 2;
        ball.nx = ball.ny = 2 * halfn + 1;
        ball.origin = {c.x - halfn * dom.h, c.y - halfn * dom.h};
        ball.mask.assign(static_cast<std::size_t>(ball.nx) * ball.ny, 0);
        std::vector<int> ball_nodes, sigma_nodes;
        for (int j = 1; j + 1 < ball.ny; ++j)
          for (int i = 1; i + 1 < ball.nx; ++i)
            if (norm(ball.node(i, j) - c) < R) {
              ball.mask[ball.index(i, j)] = 1;
              ball_nodes.push_back(static_cast<int>(ball.index(i, j)));
            }
        for (auto [gi, gj] : rec.cert.sigma) {
          const Point p{dom.origin.x + gi * dom.h, dom.origin.y + gj * dom.h};
          const int bi = static_cast<int>(std::lround((p.x - ball.origin.x) / ball.h));
          const int bj = static_cast<int>(std::lround((p.y - ball.origin.y) / ball.h));
          if (bi > 0 && bi + 1 < ball.nx && bj > 0 && bj + 1 < ball.ny &&
              ball.mask[ball.index(bi, bj)])
            sigma_nodes.push_back(static_cast<int>(ball.index(bi, bj)));
        }
        const gagliardo::FractionalOrder order(s, true);
        const auto form = gagliardo::assemble_2d(ball, order);
        rec.cap_lower = capacity::capacity(sigma_nodes, ball_nodes, form, opt.qp).value;
        rec.cap_via_qp = true;
      }
      const double tile_r = 5.0 * delta * r;
      rec.tile_bound = (s / (tile_r * tile_r)) * phi22 * rec.cap_lower;
      min_tile_bound = std::min(min_tile_bound, rec.tile_bound);
      cert.tiles.push_back(std::move(rec));
    }
  if (cert.tiles.empty()) throw Error("certificate: no tile meets the domain");
  cert.bound_pipeline = min_tile_bound;
  cert.bound_closed_form =
      constants::theta(s, table) * std::pow(static_cast<double>(k), -s) * std::pow(r, -2.0 * s);
  return cert;
}

VerifyReport verify_main_theorem(const geometry::RasterDomain& dom, double s,
                                 const constants::ConstantsTable& table,
                                 const CertificateOptions& copt,
                                 const spectral::EigOptions& eopt, double tol) {
  VerifyReport rep;
  rep.domain_label = dom.label;
  rep.certificate = lower_bound_certificate(dom, s, table, copt);
  rep.heuristic = rep.certificate.heuristic;

  const gagliardo::FractionalOrder order(s, true);
  const auto form = gagliardo::assemble_2d(dom, order);
  rep.eig = spectral::smallest_eigenvalue(form, eopt).lambda;

  // trial upper bound: tensor bump in an inscribed rectangle of the domain;
  // punctures are spectrally invisible for the continuum quantity, so the
  // trial may ignore them
  const double x_lo = dom.origin.x + dom.h, x_hi = dom.origin.x + (dom.nx - 2) * dom.h;
  const double y_lo = dom.origin.y + dom.h, y_hi = dom.origin.y + (dom.ny - 2) * dom.h;
  // find the largest inscribed axis-aligned rectangle via the distance
  // transform: center the bump at the in-center
  const auto dist = geometry::distance_to_complement(dom);
  double best = 0.0;
  Point center{0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)};
  for (int j = 0; j < dom.ny; ++j)
    for (int i = 0; i < dom.nx; ++i)
      if (dist[dom.index(i, j)] > best) {
        best = dist[dom.index(i, j)];
        center = dom.node(i, j);
      }
  const double halfw = best / std::sqrt(2.0) * 0.95;  // inscribed square inside the disk
  spectral::TrialDescriptor trial;
  trial.kind = spectral::TrialDescriptor::Kind::kProduct;
  trial.center = center;
  trial.a = trial.b = halfw;
  rep.upper = spectral::rayleigh_upper_bound(trial, s, 1e-6).value;

  const double lower = std::max(rep.certificate.bound_pipeline, rep.certificate.bound_closed_form);
  rep.pass = lower <= rep.eig + tol && lower <= rep.upper + tol;
  return rep;
}

SHalfResult s_half_sweep(int k, const std::vector<double>& s_list, double h,
                         bool with_eigensolves, const spectral::EigOptions& opt) {
  SHalfResult out;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double s : s_list) {
    if (!(s > 0.5 && s < 0.75))
      throw Error("s_half_sweep: s-list must lie in (1/2, 3/4)");
    SHalfRow row;
    row.s = s;
    const auto [eps, n] = spectral::funnel_parameters(s);
    row.eps = eps;
    row.n = n;
    spectral::TrialDescriptor trial;
    trial.kind = spectral::TrialDescriptor::Kind::kFunnel;
    trial.s = s;
    trial.eps = eps;
    trial.n = n;
    row.upper = spectral::rayleigh_upper_bound(trial, s, 1e-7).value;
    row.ratio = row.upper / (2.0 * s - 1.0);
    if (with_eigensolves) {
      FamilySpec spec;
      spec.kind = FamilySpec::Kind::kCombWindow;
      spec.k = k;
      spec.h = h;
      spec.comb_halfwidth = std::max(8.0, static_cast<double>(n));
      if (spec.comb_halfwidth > 8.0) out.window_grown = true;
      const auto dom = build_family(spec);
      const gagliardo::FractionalOrder order(s, true);
      const auto form = gagliardo::assemble_2d(dom, order);
      row.lambda_window = spectral::smallest_eigenvalue(form, opt).lambda;
    }
    lo = std::min(lo, row.ratio);
    hi = std::max(hi, row.ratio);
    out.rows.push_back(row);
  }
  out.max_over_min_ratio = hi / lo;
  return out;
}

std::string to_json(const LowerBoundCertificate& cert) {
  std::ostringstream os;
  os.precision(15);
  os << "{\n  \"s\": " << cert.s << ",\n  \"k\": " << cert.k
     << ",\n  \"r_omega\": " << cert.r_omega << ",\n  \"bound_pipeline\": "
     << cert.bound_pipeline << ",\n  \"bound_closed_form\": " << cert.bound_closed_form
     << ",\n  \"heuristic\": " << (cert.heuristic ? "true" : "false")
     << ",\n  \"constants\": {\"m_s\": " << cert.constants_used.morrey
     << ", \"A_dir\": " << cert.constants_used.a_dir << " (" << cert.constants_used.a_dir_prov
     << "), \"phi22\": " << cert.constants_used.phi22 << "},\n  \"tiles\": [";
  for (std::size_t t = 0; t < cert.tiles.size(); ++t) {
    const auto& rec = cert.tiles[t];
    os << (t ? ",\n    " : "\n    ") << "{\"tile\": [" << rec.ti << ", " << rec.tj
       << "], \"cap_lower\": " << rec.cap_lower << ", \"tile_bound\": " << rec.tile_bound
       << ", \"max_projection\": " << rec.cert.max_projection()
       << ", \"reliable_cells\": " << rec.cert.reliable.size()
       << ", \"via_qp\": " << (rec.cap_via_qp ? "true" : "false") << "}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

std::string to_json(const VerifyReport& rep) {
  std::ostringstream os;
  os.precision(15);
  os << "{\n  \"domain\": \"" << rep.domain_label << "\",\n  \"verdict\": \""
     << (rep.pass ? "PASS" : "FAIL") << "\",\n  \"heuristic\": "
     << (rep.heuristic ? "true" : "false") << ",\n  \"lower_pipeline\": "
     << rep.certificate.bound_pipeline << ",\n  \"lower_closed_form\": "
     << rep.certificate.bound_closed_form << ",\n  \"eig\": " << rep.eig
     << ",\n  \"upper\": " << rep.upper << ",\n  \"certificate\": " << to_json(rep.certificate)
     << "}\n";
  return os.str();
}

}  // namespace fracspec::pipeline
