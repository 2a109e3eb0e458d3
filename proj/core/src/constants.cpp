#include "fracspec/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "fracspec/analytic.hpp"
#include "fracspec/capacity.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/report.hpp"

namespace fracspec::constants {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kClosedForm: return "closed-form";
    case Provenance::kQuadrature: return "quadrature";
    case Provenance::kEstimated: return "estimated";
    case Provenance::kConfigured: return "configured";
  }
  return "?";
}

const ConstantsTable::PerS* ConstantsTable::find(double s) const {
  for (const auto& row : rows)
    if (std::fabs(row.s - s) < 1e-12) return &row;
  return nullptr;
}

double fourier_A(double s) {
  if (!(s > 0.0 && s < 1.0)) throw Error("fourier_A: s must lie in (0,1)");
  // I = \int_R |e^{it}-1|^2 |t|^{-1-2s} dt = 2 \int_0^inf (2-2cos t) t^{-1-2s} dt
  const double T = 1e4;
  auto f = [s](double t) {
    const double sn = std::sin(0.5 * t);  // |e^{it} - 1|^2 = 4 sin^2(t/2), cancellation-free
    return 4.0 * sn * sn * std::pow(t, -1.0 - 2.0 * s);
  };
  // [0, 2pi] via Gauss-Jacobi with weight t^{1-2s}: the remaining factor
  // 4 sin^2(t/2)/t^2 is entire, so the endpoint is integrated exactly
  const quad::Rule head = quad::gauss_jacobi01(48, 1.0 - 2.0 * s);
  double I = 0.0;
  for (std::size_t i = 0; i < head.x.size(); ++i) {
    const double t = 2.0 * M_PI * head.x[i];
    const double sn = std::sin(0.5 * t) / t;
    I += head.w[i] * 4.0 * sn * sn;
  }
  I *= std::pow(2.0 * M_PI, 2.0 - 2.0 * s);
  // periods up to T with fixed Gauss
  const int periods = static_cast<int>(std::floor(T / (2.0 * M_PI)));
  std::vector<double> terms;
  for (int k = 1; k < periods; ++k)
    terms.push_back(quad::gauss(f, 2.0 * M_PI * k, 2.0 * M_PI * (k + 1), 24));
  I += pairwise_sum(terms);
  const double T0 = 2.0 * M_PI * periods;
  // closed-form power tail plus a two-step integration by parts for the
  // oscillatory remainder: |error| <= a(a+1) T0^{-a-2} with a = 1+2s
  const double a = 1.0 + 2.0 * s;
  const double tail_const = 2.0 * std::pow(T0, -2.0 * s) / (2.0 * s);
  const double tail_osc =
      -2.0 * (-std::sin(T0) * std::pow(T0, -a) + a * std::cos(T0) * std::pow(T0, -a - 1.0));
  I += tail_const + tail_osc;
  return 1.0 / (2.0 * I);
}

double morrey_m(double s) {
  if (!(s > 0.5 && s < 1.0)) throw Error("morrey_m: requires 1/2 < s < 1");
  return (3.0 - 2.0 * s) * (2.0 * s - 1.0) / (2.0 * std::pow(4.0, 2.0 - s) * fourier_A(s));
}

double alpha(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error("alpha: s must lie in [0,1]");
  // t = tan(theta) maps to \int_{-pi/2}^{pi/2} cos(theta)^{2s} dtheta
  auto f = [s](double th) { return std::pow(std::cos(th), 2.0 * s); };
  quad::AdaptiveOptions opt;
  opt.abs_tol = 1e-12;
  opt.breakpoints = {-M_PI / 2.0, M_PI / 2.0};
  return quad::adaptive(f, -M_PI / 2.0, M_PI / 2.0, opt);
}

ZetaDecomposition zeta_seminorm(double s, double tol) {
  if (!(s > 0.5 && s < 1.0)) throw Error("zeta_seminorm: requires 1/2 < s < 1");
  ZetaDecomposition out;
  const double p = 2.0 * s - 1.0;
  auto profile = [p](double x) { return std::pow(std::fabs(x), p); };

  // interior: (x,y) in (-1,1)^2 of (|x|^p - |y|^p)^2 / |x-y|^{1+2s}.
  // Inner y-integral per x: the y -> x singularity is handled by Gauss-Jacobi
  // (weight |y-x|^{1-2s}) on the squared difference quotient toward each side,
  // far parts by geometric-composite Gauss split at the cusp y = 0.
  const quad::Rule jac = quad::gauss_jacobi01(32, 1.0 - 2.0 * s);
  const quad::Rule& leg = quad::gauss_legendre(16);
  auto graded = [&](const std::function<double(double)>& g, double lo, double hi) {
    if (!(hi > lo)) return 0.0;
    auto panel = [&](double a2, double b2) {
      const double mid = 0.5 * (a2 + b2), half = 0.5 * (b2 - a2);
      double acc = 0.0;
      for (std::size_t i = 0; i < leg.x.size(); ++i)
        acc += leg.w[i] * g(mid + half * leg.x[i]);
      return half * acc;
    };
    const double mid = std::sqrt(std::max(lo, 1e-300) * hi);
    double total = 0.0;
    for (double sing : {lo, hi}) {
      const double dir = (sing == lo) ? 1.0 : -1.0;
      const double len = dir > 0 ? mid - lo : hi - mid;
      if (!(len > 0.0)) continue;
      const double floor_c =
          std::max(1e-290, 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(sing));
      double c = len;
      for (int k = 0; k < 30; ++k) {
        const double c2 = c * 0.2;
        total += panel(std::min(sing + dir * c2, sing + dir * c),
                       std::max(sing + dir * c2, sing + dir * c));
        c = c2;
        if (c < floor_c) break;
      }
      total += panel(std::min(sing, sing + dir * c), std::max(sing, sing + dir * c));
    }
    return total;
  };
  auto side = [&](double x, double fx, double dir, double Z) {
    if (!(Z > 0.0)) return 0.0;
    std::vector<double> cuts;
    const double zx = std::fabs(x);  // scale of the cusp at the origin
    if (zx > 0.0 && zx < Z) cuts.push_back(zx);
    cuts.push_back(Z);
    std::sort(cuts.begin(), cuts.end());
    auto g = [&](double z) {
      const double d = profile(x + dir * z) - fx;
      return d * d * std::pow(z, -1.0 - 2.0 * s);
    };
    double total = 0.0;
    // quotient piece with weight z^{1-2s}; its outer edge is graded because
    // z -> profile(x + dir z) can have a cusp exactly at the first cut
    const double z0 = cuts.front();
    const double zq = 0.7 * z0;
    double acc = 0.0;
    for (std::size_t i = 0; i < jac.x.size(); ++i) {
      const double z = zq * jac.x[i];
      const double q = (profile(x + dir * z) - fx) / z;
      acc += jac.w[i] * q * q;
    }
    total += std::pow(zq, 2.0 - 2.0 * s) * acc;
    total += graded(g, zq, z0);
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) total += graded(g, cuts[k], cuts[k + 1]);
    return total;
  };
  auto inner = [&](double x) {
    const double fx = profile(x);
    return side(x, fx, +1.0, 1.0 - x) + side(x, fx, -1.0, x + 1.0);
  };
  quad::AdaptiveOptions outer;
  outer.abs_tol = tol * 0.4;
  outer.max_depth = 12;
  outer.grade_levels = 100;
  outer.breakpoints = {0.0, -1.0, 1.0};
  out.i1 = quad::adaptive(inner, -1.0, 1.0, outer);

  // exterior strips: (1/s) \int_{-1}^{1} (1-|x|^p)^2 (1 -+ x)^{-2s} dx
  auto strip = [&](double sign) {
    auto g = [&](double x) {
      const double v = 1.0 - profile(x);
      const double base = 1.0 - sign * x;
      if (v == 0.0 || base <= 0.0) return 0.0;
      return v * v * std::pow(base, -2.0 * s);
    };
    quad::AdaptiveOptions opt;
    opt.abs_tol = tol * 0.3 * s;
    opt.breakpoints = {0.0, -1.0, 1.0};
    return quad::adaptive(g, -1.0, 1.0, opt) / s;
  };
  out.i2 = strip(1.0);
  out.i3 = strip(-1.0);
  out.total = out.i1 + out.i2 + out.i3;
  if (!std::isfinite(out.total)) throw NonConvergenceError("zeta_seminorm diverged");
  return out;
}

double theta(double s, const ConstantsTable& table) {
  if (!(s > 0.5 && s < 1.0)) throw Error("theta: requires 1/2 < s < 1");
  if (!(table.a_dir.value > 0.0) || !(table.phi22.value > 0.0))
    throw Error("theta: table missing A_dir or phi22");
  const double m_s = morrey_m(s);
  const double pref =
      std::pow(50.0 * (2.0 - std::sqrt(2.0)), (1.0 - 2.0 * s) / 2.0) / std::pow(2.0, 1.0 + 2.0 * s);
  return pref * m_s * table.phi22.value / (200.0 * table.a_dir.value);
}

std::vector<gagliardo::GridFunction> default_corpus(const geometry::RasterDomain& dom,
                                                    int variant) {
  // twelve members: tensor bumps, off-center bumps, three oscillatory bumps,
  // funnel products, one strongly anisotropic plateau pair
  const double jx = 0.03 * variant, jy = 0.02 * variant;
  auto rel = [&](int i, int j) {
    return Point{(i + 0.5) / dom.nx, (j + 0.5) / dom.ny};  // (0,1)^2 box coordinates
  };
  auto bump1 = [](double t, double c, double w) {
    const double q = 1.0 - sqr((t - c) / w);
    return q > 0.0 ? std::exp(1.0 - 1.0 / q) : 0.0;
  };
  auto plateau = [](double t, double c, double w) {
    // wide flat top with smooth shoulders
    const double d = std::fabs(t - c);
    if (d >= w) return 0.0;
    if (d <= 0.6 * w) return 1.0;
    const double q = 1.0 - sqr((d - 0.6 * w) / (0.4 * w));
    return q > 0.0 ? std::exp(1.0 - 1.0 / q) : 0.0;
  };
  auto funnel = [](double t, double c, double w, double s0) {
    return analytic::funnel_profile((t - c) / w, s0);
  };

  using F2 = std::function<double(double, double)>;
  std::vector<F2> fs;
  fs.push_back([&](double X, double Y) { return bump1(X, .5 + jx, .42) * bump1(Y, .5 + jy, .42); });
  fs.push_back([&](double X, double Y) { return bump1(X, .5, .22) * bump1(Y, .5, .22); });
  fs.push_back([&](double X, double Y) { return bump1(X, .3 + jx, .26) * bump1(Y, .42, .3) ; });
  fs.push_back([&](double X, double Y) { return bump1(X, .66, .2) * bump1(Y, .6 + jy, .24); });
  fs.push_back([&](double X, double Y) { return plateau(X, .5, .45) * bump1(Y, .5, .18); });
  fs.push_back([&](double X, double Y) { return bump1(X, .5, .18) * plateau(Y, .5, .45); });
  for (int f = 1; f <= 3; ++f)
    fs.push_back([&, f](double X, double Y) {
      return bump1(X, .5, .4) * bump1(Y, .5, .4) * std::cos(2.0 * M_PI * f * (X + 0.25 * Y));
    });
  fs.push_back([&](double X, double Y) { return funnel(X, .5, .4, .75) * bump1(Y, .5, .38); });
  fs.push_back([&](double X, double Y) { return funnel(X, .5, .45, .6) * funnel(Y, .5, .4, .8); });
  fs.push_back([&](double X, double Y) {
    return bump1(X, .45, .38) * bump1(Y, .55, .38) * std::sin(2.0 * M_PI * (X + Y));
  });

  std::vector<gagliardo::GridFunction> corpus;
  for (const F2& f : fs) {
    auto u = gagliardo::GridFunction::zeros(dom);
    for (int j = 0; j < dom.ny; ++j)
      for (int i = 0; i < dom.nx; ++i)
        if (dom.mask[dom.index(i, j)]) {
          const Point P = rel(i, j);
          u.values[dom.index(i, j)] = f(P.x, P.y);
        }
    corpus.push_back(std::move(u));
  }
  return corpus;
}

double estimate_A_dir(const std::vector<gagliardo::GridFunction>& corpus,
                      const std::vector<double>& s_grid) {
  if (corpus.empty()) throw Error("estimate_A_dir: empty corpus");
  double worst = 0.0;
  for (double s : s_grid) {
    const gagliardo::FractionalOrder order(s);
    const gagliardo::NonlocalForm form = gagliardo::assemble_2d(*corpus.front().dom, order);
    for (const auto& u : corpus) {
      const double full = gagliardo::evaluate(form, u);
      if (full <= 0.0) continue;
      for (const auto& dir : {geometry::dir_e1(), geometry::dir_e2()}) {
        const double d = gagliardo::directional_seminorm(u, dir, order).value;
        worst = std::max(worst, d / full);
      }
    }
  }
  if (worst == 0.0) throw Error("estimate_A_dir: corpus is degenerate");
  return 1.1 * worst;
}

double estimate_M_pw(const std::vector<gagliardo::GridFunction>& corpus,
                     const std::vector<double>& s_grid,
                     const geometry::RasterDomain& disk_raster, double disk_radius) {
  // regional form over the disk nodes; corpus members get a C^1 radial taper
  // near the rim so the regional raster error stays small under refinement
  // (tapered members remain admissible test functions for the inequality)
  const Point c{disk_raster.origin.x + 0.5 * (disk_raster.nx - 1) * disk_raster.h,
                disk_raster.origin.y + 0.5 * (disk_raster.ny - 1) * disk_raster.h};
  std::vector<int> disk_nodes;
  for (int j = 0; j < disk_raster.ny; ++j)
    for (int i = 0; i < disk_raster.nx; ++i)
      if (norm(disk_raster.node(i, j) - c) < disk_radius)
        disk_nodes.push_back(static_cast<int>(disk_raster.index(i, j)));
  if (disk_nodes.empty()) throw Error("estimate_M_pw: disk raster has no disk nodes");
  auto taper = [&](int idx) {
    const int i = idx % disk_raster.nx, j = idx / disk_raster.nx;
    const double t = (disk_radius - norm(disk_raster.node(i, j) - c)) / (0.25 * disk_radius);
    const double w = std::min(1.0, std::max(0.0, t));
    return w * w * (3.0 - 2.0 * w);
  };
  double worst = 0.0;
  std::vector<double> tapered(disk_raster.mask.size(), 0.0);
  for (double s : s_grid) {
    const gagliardo::FractionalOrder order(s);
    const auto form = gagliardo::assemble_2d(disk_raster, order);
    for (const auto& u : corpus) {
      std::fill(tapered.begin(), tapered.end(), 0.0);
      for (int i : disk_nodes) tapered[i] = u.values[i] * taper(i);
      const double sem = gagliardo::evaluate_regional(form, tapered, disk_nodes);
      if (sem <= 0.0) continue;  // constant on the disk: both sides vanish
      double av = 0.0;
      for (int i : disk_nodes) av += tapered[i];
      av /= static_cast<double>(disk_nodes.size());
      double num = 0.0;
      for (int i : disk_nodes) num += sqr(tapered[i] - av);
      num *= form.mass_weight;
      const double ratio = num / ((1.0 - s) * std::pow(disk_radius, 2.0 * s) * sem);
      worst = std::max(worst, ratio);
    }
  }
  if (worst == 0.0) throw Error("estimate_M_pw: corpus is degenerate");
  return 1.1 * worst;
}

std::vector<MazyaScenario> default_mazya_scenarios(double R_over_r, int variant) {
  // Q_r = (-1,1)^2, sigma = vertical segment through the middle, B_R around 0
  const double r = 1.0, R = R_over_r * r;
  const double h = 1.0 / 10.0;
  const double margin = 2.0 * h;
  const int half = static_cast<int>(std::ceil((R + margin) / h));
  geometry::RasterDomain box;
  box.h = h;
  box.nx = 2 * half + 1;
  box.ny = 2 * half + 1;
  box.origin = {-half * h, -half * h};
  box.mask.assign(static_cast<std::size_t>(box.nx) * box.ny, 0);
  for (int j = 1; j + 1 < box.ny; ++j)
    for (int i = 1; i + 1 < box.nx; ++i)
      if (norm(box.node(i, j)) < R) box.mask[box.index(i, j)] = 1;
  box.label = "mazya-box";

  std::vector<int> q_nodes, sigma_nodes, ball_nodes;
  for (int j = 0; j < box.ny; ++j)
    for (int i = 0; i < box.nx; ++i) {
      const Point p = box.node(i, j);
      const int idx = static_cast<int>(box.index(i, j));
      if (!box.mask[idx]) continue;
      ball_nodes.push_back(idx);
      if (std::fabs(p.x) < r && std::fabs(p.y) < r) q_nodes.push_back(idx);
      if (std::fabs(p.x) < 0.51 * h && std::fabs(p.y) <= 0.5 + 1e-9) sigma_nodes.push_back(idx);
    }

  auto bump2 = [](Point p, Point c, double wx, double wy) {
    const double qx = 1.0 - sqr((p.x - c.x) / wx), qy = 1.0 - sqr((p.y - c.y) / wy);
    if (qx <= 0.0 || qy <= 0.0) return 0.0;
    return std::exp(2.0 - 1.0 / qx - 1.0 / qy);
  };
  const double dj = 0.02 * variant;
  std::vector<std::function<double(Point)>> shapes = {
      [&](Point p) { return bump2(p, {-0.55 + dj, 0.0}, 0.35, 0.8); },
      [&](Point p) { return bump2(p, {0.55 - dj, 0.1}, 0.35, 0.7); },
      [&](Point p) { return bump2(p, {-0.5, -0.35}, 0.3, 0.45) + bump2(p, {0.5, 0.35}, 0.3, 0.45); },
      [&](Point p) { return bump2(p, {0.0, 0.78}, 0.85, 0.18); },
      [&](Point p) { return bump2(p, {-0.45, 0.5}, 0.4, 0.4) + 0.5 * bump2(p, {0.5, -0.5}, 0.4, 0.4); },
  };

  std::vector<MazyaScenario> out(shapes.size());
  for (std::size_t k = 0; k < shapes.size(); ++k) {
    MazyaScenario& sc = out[k];
    sc.box = box;
    sc.q_nodes = q_nodes;
    sc.sigma_nodes = sigma_nodes;
    sc.ball_nodes = ball_nodes;
    sc.r = r;
    sc.u.values.assign(static_cast<std::size_t>(box.nx) * box.ny, 0.0);
    for (int j = 0; j < box.ny; ++j)
      for (int i = 0; i < box.nx; ++i)
        if (box.mask[box.index(i, j)]) {
          const Point p = box.node(i, j);
          // keep a clear margin around sigma
          if (std::fabs(p.x) < 2.5 * h && std::fabs(p.y) < 0.5 + 2.5 * h) continue;
          sc.u.values[box.index(i, j)] = shapes[k](p);
        }
  }
  // bind the grid functions to their own boxes once the vector is final
  for (auto& sc : out) sc.u.dom = &sc.box;
  return out;
}

double estimate_phi22(const std::vector<MazyaScenario>& scenarios,
                      const std::vector<double>& s_grid) {
  if (scenarios.empty()) throw Error("estimate_phi22: no scenarios");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& sc : scenarios)
    for (double s : s_grid) {
      const gagliardo::FractionalOrder order(s, true);
      const auto rep =
          capacity::mazya_check(sc.u, sc.sigma_nodes, sc.q_nodes, sc.ball_nodes, sc.r, order);
      if (rep.skipped || rep.ratio <= 0.0) continue;
      best = std::min(best, rep.ratio);
    }
  if (!std::isfinite(best)) throw Error("estimate_phi22: all scenarios degenerate");
  return best / 1.1;
}

ConstantsTable build_table(const TableOptions& opt) {
  ConstantsTable table;

  if (opt.a_dir_override) {
    table.a_dir = {*opt.a_dir_override, Provenance::kConfigured, 0};
  } else {
    geometry::RasterDomain square;
    square.h = 1.0 / 32.0;
    square.nx = square.ny = 35;
    square.origin = {-square.h, -square.h};
    square.mask.assign(static_cast<std::size_t>(square.nx) * square.ny, 0);
    for (int j = 1; j + 1 < square.ny; ++j)
      for (int i = 1; i + 1 < square.nx; ++i) square.mask[square.index(i, j)] = 1;
    const auto corpus = default_corpus(square);
    table.a_dir = {estimate_A_dir(corpus, opt.estimator_s_grid), Provenance::kEstimated,
                   static_cast<int>(corpus.size())};
  }

  if (opt.m_pw_override) {
    table.m_pw = {*opt.m_pw_override, Provenance::kConfigured, 0};
  } else {
    geometry::RasterDomain diskbox;
    diskbox.h = 1.0 / 16.0;
    const int half = static_cast<int>(std::ceil(1.1 / diskbox.h));
    diskbox.nx = diskbox.ny = 2 * half + 1;
    diskbox.origin = {-half * diskbox.h, -half * diskbox.h};
    diskbox.mask.assign(static_cast<std::size_t>(diskbox.nx) * diskbox.ny, 0);
    for (int j = 1; j + 1 < diskbox.ny; ++j)
      for (int i = 1; i + 1 < diskbox.nx; ++i)
        if (norm(diskbox.node(i, j)) < 1.0) diskbox.mask[diskbox.index(i, j)] = 1;
    const auto corpus = default_corpus(diskbox);
    table.m_pw = {estimate_M_pw(corpus, opt.estimator_s_grid, diskbox, 1.0),
                  Provenance::kEstimated, static_cast<int>(corpus.size())};
  }

  if (opt.phi22_override) {
    table.phi22 = {*opt.phi22_override, Provenance::kConfigured, 0};
  } else {
    const auto scenarios = default_mazya_scenarios();
    table.phi22 = {estimate_phi22(scenarios, opt.estimator_s_grid), Provenance::kEstimated,
                   static_cast<int>(scenarios.size())};
  }

  for (double s : opt.s_values) {
    ConstantsTable::PerS row;
    row.s = s;
    row.fourier_a = {fourier_A(s), Provenance::kQuadrature, 0};
    row.alpha = {alpha(s), Provenance::kQuadrature, 0};
    if (s > 0.5) {
      row.morrey = {morrey_m(s), Provenance::kQuadrature, 0};
      row.zeta_sq = {zeta_seminorm(s, opt.zeta_tol).total, Provenance::kQuadrature, 0};
      row.theta = {theta(s, table), Provenance::kQuadrature, 0};
    }
    table.rows.push_back(row);
  }
  return table;
}

void write_constants_csv(std::ostream& os, const ConstantsTable& table) {
  report::Csv csv({"s", "A_s", "m_s", "alpha_s", "zeta", "theta", "A_dir", "M_pw", "phi22",
                   "provenance"});
  for (const auto& row : table.rows) {
    std::ostringstream prov;
    prov << "A_s=" << to_string(row.fourier_a.provenance)
         << ";A_dir=" << to_string(table.a_dir.provenance)
         << ";M_pw=" << to_string(table.m_pw.provenance)
         << ";phi22=" << to_string(table.phi22.provenance);
    csv.add_row({report::fmt(row.s), report::fmt(row.fourier_a.value),
                 report::fmt(row.morrey.value), report::fmt(row.alpha.value),
                 report::fmt(row.zeta_sq.value), report::fmt(row.theta.value),
                 report::fmt(table.a_dir.value), report::fmt(table.m_pw.value),
                 report::fmt(table.phi22.value), prov.str()});
  }
  csv.write(os);
}

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r");
      const auto e = t.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : t.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = val;
  }
  return out;
}

}  // namespace fracspec::constants
