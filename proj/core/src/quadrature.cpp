#include "fracspec/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "fracspec/common.hpp"
#include <cstdio>

namespace fracspec::quad {

namespace {

Rule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
  const int n = static_cast<int>(diag.size());
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) J(i, i) = diag(i);
  for (int i = 0; i + 1 < n; ++i) {
    J(i, i + 1) = offdiag(i);
    J(i + 1, i) = offdiag(i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    r.x[i] = es.eigenvalues()(i);
    const double v = es.eigenvectors()(0, i);
    r.w[i] = mu0 * v * v;
  }
  return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
  static std::map<int, Rule> cache;
  static std::mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd e(n - 1 > 0 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) e(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return cache.emplace(n, golub_welsch(d, e, 2.0)).first->second;
}

Rule gauss_jacobi01(int n, double beta) {
  // weight (1+x)^beta on [-1,1] (alpha = 0), then mapped to [0,1]
  Eigen::VectorXd d(n), e(n - 1 > 0 ? n - 1 : 0);
  d(0) = beta / (beta + 2.0);
  for (int k = 1; k < n; ++k) {
    const double t = 2.0 * k + beta;
    d(k) = beta * beta / (t * (t + 2.0));
    const double e2 =
        4.0 * k * k * (k + beta) * (k + beta) / (t * t * (t + 1.0) * (t - 1.0));
    e(k - 1) = std::sqrt(e2);
  }
  const double mu0 = std::pow(2.0, beta + 1.0) / (beta + 1.0);
  Rule r = golub_welsch(d, e, mu0);
  const double scale = std::pow(2.0, -beta - 1.0);
  for (int i = 0; i < n; ++i) {
    r.x[i] = 0.5 * (r.x[i] + 1.0);
    r.w[i] *= scale;
  }
  return r;
}

double gauss(const std::function<double(double)>& f, double a, double b, int n) {
  const Rule& r = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  std::vector<double> terms(n);
  for (int i = 0; i < n; ++i) terms[i] = r.w[i] * f(mid + half * r.x[i]);
  return half * pairwise_sum(terms);
}

double power_integral(double e, double z0, double z1) {
  const double ep1 = e + 1.0;
  if (z0 <= 0.0) {
    if (!(ep1 > 0.0)) throw Error("power_integral: divergent at 0");
    return std::pow(z1, ep1) / ep1;
  }
  if (std::fabs(ep1) < 1e-13) return std::log(z1 / z0);
  // z0^{e+1} * expm1((e+1) log(z1/z0)) / (e+1); stable as e -> -1
  return std::pow(z0, ep1) * std::expm1(ep1 * std::log(z1 / z0)) / ep1;
}

namespace {

double refine(const std::function<double(double)>& f, double a, double b, double tol,
              int depth, int max_depth, double len_floor) {
  const double coarse = gauss(f, a, b, 10);
  const double mid = 0.5 * (a + b);
  const double fine = gauss(f, a, mid, 10) + gauss(f, mid, b, 10);
  // the relative floor keeps roundoff in the two estimates from forcing
  // unbounded subdivision
  const double accept = std::max(tol, 5e-15 * (std::fabs(fine) + std::fabs(coarse)));
#ifdef FRACSPEC_QUAD_TRACE
  if (depth >= 18)
    std::fprintf(stderr, "depth=%d a=%.6e len=%.3e diff=%.3e accept=%.3e\n", depth, a,
                 b - a, std::fabs(fine - coarse), accept);
#endif
  if (std::fabs(fine - coarse) <= accept || depth >= max_depth || (b - a) <= len_floor)
    return fine;
  return refine(f, a, mid, 0.5 * tol, depth + 1, max_depth, len_floor) +
         refine(f, mid, b, 0.5 * tol, depth + 1, max_depth, len_floor);
}

}  // namespace

double adaptive(const std::function<double(double)>& f, double a, double b,
                const AdaptiveOptions& opt) {
  if (!(b > a)) return 0.0;
  std::vector<double> nodes{a, b};
  for (double t : opt.breakpoints)
    if (t >= a && t <= b) nodes.push_back(t);
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto singular = [&](double t) {
    for (double u : opt.breakpoints)
      if (u == t) return true;
    return false;
  };

  std::vector<std::pair<double, double>> segs;
  auto grade_toward = [&](double sing, double other) {
    // segments accumulating geometrically toward `sing`; grading stops at the
    // representable resolution around the singular point so that Gauss nodes
    // never collapse onto it (a cusp at 0 can still be graded very deep)
    double len = std::fabs(other - sing);
    const double dir = (other > sing) ? 1.0 : -1.0;
    const double floor_c =
        std::max(1e-290, 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(sing));
    double c = len;
    for (int k = 0; k < opt.grade_levels; ++k) {
      const double c2 = c * opt.grade_ratio;
      segs.emplace_back(std::min(sing + dir * c2, sing + dir * c),
                        std::max(sing + dir * c2, sing + dir * c));
      c = c2;
      if (c < floor_c) break;
    }
    // innermost sliver [sing, sing +- c]: Gauss nodes are interior, so an
    // integrable endpoint singularity is sampled finitely
    segs.emplace_back(std::min(sing, sing + dir * c), std::max(sing, sing + dir * c));
  };

  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double lo = nodes[i], hi = nodes[i + 1];
    const bool slo = singular(lo), shi = singular(hi);
    if (slo && shi) {
      const double mid = 0.5 * (lo + hi);
      grade_toward(lo, mid);
      grade_toward(hi, mid);
    } else if (slo) {
      grade_toward(lo, hi);
    } else if (shi) {
      grade_toward(hi, lo);
    } else {
      segs.emplace_back(lo, hi);
    }
  }

  std::vector<double> parts;
  parts.reserve(segs.size());
  const double span = b - a;
  // equal error split across segments: graded segments have exponentially
  // decreasing length but slowly decreasing mass, so apportioning by length
  // would starve them
  const double tol = std::max(opt.abs_tol / std::max<std::size_t>(1, segs.size()), 1e-300);
  for (auto [s0, s1] : segs) {
    if (!(s1 > s0)) continue;
    parts.push_back(refine(f, s0, s1, tol, 0, opt.max_depth, 1e-13 * span));
  }
  return pairwise_sum(parts);
}

}  // namespace fracspec::quad
