#include "fracspec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracspec/quadrature.hpp"

namespace fracspec::analytic {

namespace {

std::vector<double> all_breaks(const Fn1D& f) {
  std::vector<double> b = f.breakpoints;
  b.push_back(f.support_lo);
  b.push_back(f.support_hi);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// Gauss panel of g over [a, b].
double panel(const std::function<double(double)>& g, double a, double b,
             const quad::Rule& leg) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < leg.x.size(); ++i) acc += leg.w[i] * g(mid + half * leg.x[i]);
  return half * acc;
}

// Composite rule over [lo, hi] graded geometrically toward both endpoints;
// resolves algebraic behavior of the integrand at the cuts.
double graded_interval(const std::function<double(double)>& g, double lo, double hi,
                       const quad::Rule& leg, double ratio = 0.25, int levels = 26) {
  if (!(hi > lo)) return 0.0;
  const double mid = std::sqrt(std::max(lo, 1e-300) * hi);
  double total = 0.0;
  for (double sing : {lo, hi}) {
    const double dir = (sing == lo) ? 1.0 : -1.0;
    const double len = dir > 0 ? mid - lo : hi - mid;
    if (!(len > 0.0)) continue;
    const double floor_c =
        std::max(1e-290, 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(sing));
    double c = len;
    for (int k = 0; k < levels; ++k) {
      const double c2 = c * ratio;
      total += panel(g, std::min(sing + dir * c2, sing + dir * c),
                     std::max(sing + dir * c2, sing + dir * c), leg);
      c = c2;
      if (c < floor_c) break;
    }
    total += panel(g, std::min(sing, sing + dir * c), std::max(sing, sing + dir * c), leg);
  }
  return total;
}

// \int_0^Z (f(x + dir z) - f(x))^2 z^{-1-2s} dz for one direction, split at
// the distances to f's breakpoints (either side: the quotient piece must not
// span the scale of a feature behind x). The z->0 piece uses a Gauss-Jacobi
// rule with weight z^{1-2s} on the squared difference quotient (stable: nodes
// stay a fixed fraction of the segment away from zero); the other pieces are
// graded toward the cuts, where the integrand may have cusps.
double kernel_z_integral(const std::function<double(double)>& f, double x, double fx,
                         double dir, double Z, const std::vector<double>& breaks, double s,
                         const quad::Rule& jac, const quad::Rule& leg) {
  if (!(Z > 0.0)) return 0.0;
  std::vector<double> cuts;
  for (double t : breaks) {
    const double z = std::fabs(t - x);
    if (z > 0.0 && z < Z) cuts.push_back(z);
  }
  cuts.push_back(Z);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  const double z0 = cuts.front();
  auto g = [&](double z) {
    const double d = f(x + dir * z) - fx;
    return d * d * std::pow(z, -1.0 - 2.0 * s);
  };
  {
    // quotient piece on [0, 0.75 z0]; the remaining quarter is graded toward
    // z0, which may sit on a cusp of z -> f(x + dir z)
    const double zq = 0.75 * z0;
    double acc = 0.0;
    for (std::size_t i = 0; i < jac.x.size(); ++i) {
      const double z = zq * jac.x[i];
      const double q = (f(x + dir * z) - fx) / z;
      acc += jac.w[i] * q * q;
    }
    total += std::pow(zq, 2.0 - 2.0 * s) * acc;
    total += graded_interval(g, zq, z0, leg);
  }
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    total += graded_interval(g, cuts[k], cuts[k + 1], leg);
  return total;
}

}  // namespace

double seminorm_1d(const Fn1D& fn, double s, double tol) {
  const double a = fn.support_lo, b = fn.support_hi;
  if (!(b > a)) throw Error("seminorm_1d: empty support");
  const auto& f = fn.f;
  const std::vector<double> breaks = all_breaks(fn);
  const quad::Rule jac = quad::gauss_jacobi01(28, 1.0 - 2.0 * s);
  const quad::Rule& leg = quad::gauss_legendre(14);

  // interior  2 \int_a^b dx \int_0^{b-x} (f(x+z)-f(x))^2 z^{-1-2s} dz
  auto inner = [&](double x) {
    return kernel_z_integral(f, x, f(x), +1.0, b - x, breaks, s, jac, leg);
  };
  quad::AdaptiveOptions outer;
  outer.abs_tol = 0.45 * tol;
  outer.max_depth = 12;
  outer.grade_levels = 100;
  outer.breakpoints = breaks;
  const double interior = 2.0 * quad::adaptive(inner, a, b, outer);

  // exterior  2 \int_a^b f(x)^2 [ (b-x)^{-2s} + (x-a)^{-2s} ] / (2s) dx
  auto ext = [&](double x) {
    const double fx = f(x);
    const double db = b - x, da = x - a;
    if (fx == 0.0 || db <= 0.0 || da <= 0.0) return 0.0;
    return fx * fx * (std::pow(db, -2.0 * s) + std::pow(da, -2.0 * s)) / (2.0 * s);
  };
  quad::AdaptiveOptions ext_opt;
  ext_opt.abs_tol = 0.45 * tol;
  ext_opt.max_depth = 12;
  ext_opt.grade_levels = 100;
  ext_opt.breakpoints = breaks;
  const double exterior = 2.0 * quad::adaptive(ext, a, b, ext_opt);

  const double total = interior + exterior;
  if (!std::isfinite(total)) throw NonConvergenceError("seminorm_1d: quadrature diverged");
  return total;
}

double l2_norm_sq_1d(const Fn1D& fn, double tol) {
  auto g = [&](double x) {
    const double v = fn.f(x);
    return v * v;
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = tol;
  opt.max_depth = 14;
  opt.breakpoints = fn.breakpoints;
  return quad::adaptive(g, fn.support_lo, fn.support_hi, opt);
}

double sup_norm_1d(const Fn1D& fn, int samples) {
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = fn.support_lo + (fn.support_hi - fn.support_lo) * i / (samples - 1.0);
    m = std::max(m, std::fabs(fn.f(x)));
  }
  return m;
}

namespace {

// autocorrelation C(t) = \int f(x) f(x+t) dx cached on a Chebyshev-Lobatto
// grid over [0, width], evaluated by barycentric interpolation (C is even)
class Autocorr {
 public:
  Autocorr(const Fn1D& fn, double tol, int n = 96) : n_(n) {
    width_ = fn.support_hi - fn.support_lo;
    nodes_.resize(n_);
    vals_.resize(n_);
    wts_.resize(n_);
    for (int k = 0; k < n_; ++k) {
      const double t = 0.5 * width_ * (1.0 - std::cos(M_PI * k / (n_ - 1)));
      nodes_[k] = t;
      vals_[k] = direct(fn, t, tol);
      wts_[k] = (k == 0 || k == n_ - 1) ? 0.5 : 1.0;
      if (k % 2 == 1) wts_[k] = -wts_[k];
    }
    norm0_ = vals_[0];
  }

  double operator()(double t) const {
    t = std::fabs(t);
    if (t >= width_) return 0.0;
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n_; ++k) {
      const double d = t - nodes_[k];
      if (std::fabs(d) < 1e-14 * std::max(1.0, width_)) return vals_[k];
      const double c = wts_[k] / d;
      num += c * vals_[k];
      den += c;
    }
    return num / den;
  }

  double norm_sq() const { return norm0_; }
  double width() const { return width_; }

 private:
  static double direct(const Fn1D& fn, double t, double tol) {
    auto g = [&](double x) { return fn.f(x) * fn.f(x + t); };
    quad::AdaptiveOptions opt;
    opt.abs_tol = tol;
    opt.max_depth = 12;
    for (double bp : fn.breakpoints) {
      opt.breakpoints.push_back(bp);
      opt.breakpoints.push_back(bp - t);
    }
    return quad::adaptive(g, fn.support_lo, fn.support_hi - t, opt);
  }

  int n_;
  double width_ = 0.0, norm0_ = 0.0;
  std::vector<double> nodes_, vals_, wts_;
};

}  // namespace

double l2_norm_sq_tensor_2d(const TensorFn2D& f, double tol) {
  return l2_norm_sq_1d(f.a, tol) * l2_norm_sq_1d(f.b, tol);
}

double seminorm_tensor_2d(const TensorFn2D& fn, double s, double tol) {
  // [f]^2 = \int_{R^2} |z|^{-2-2s} D(z) dz with the autocorrelation defect
  // D(z) = 2(|a|^2|b|^2 - C_a(z1) C_b(z2)): polar inner disk, annular middle
  // zone, closed-form constant tail.
  const Autocorr Ca(fn.a, tol * 1e-3), Cb(fn.b, tol * 1e-3);
  const double na = Ca.norm_sq(), nb = Cb.norm_sq();
  const double Rout = std::hypot(Ca.width(), Cb.width());
  auto D = [&](double z1, double z2) { return 2.0 * (na * nb - Ca(z1) * Cb(z2)); };

  const double rho = 0.05 * std::min(Ca.width(), Cb.width());
  const auto& th_rule = quad::gauss_legendre(32);
  const quad::Rule jac = quad::gauss_jacobi01(24, 1.0 - 2.0 * s);
  double inner = 0.0;
  for (std::size_t i = 0; i < th_rule.x.size(); ++i) {
    const double th = (th_rule.x[i] + 1.0) * 0.5 * (M_PI / 2.0);  // quadrant symmetry
    const double wth = th_rule.w[i] * 0.5 * (M_PI / 2.0);
    const double c = std::cos(th), sn = std::sin(th);
    double acc = 0.0;
    for (std::size_t j = 0; j < jac.x.size(); ++j) {
      const double r = rho * jac.x[j];
      acc += jac.w[j] * D(r * c, r * sn) / (r * r);
    }
    inner += wth * std::pow(rho, 2.0 - 2.0 * s) * acc;
  }
  inner *= 4.0;

  // middle zone rho <= r <= Rout: geometric-composite radial times Gauss theta
  const auto& rad_rule = quad::gauss_legendre(14);
  double mid = 0.0;
  const int rad_pieces =
      std::max(3, static_cast<int>(std::ceil(std::log2(Rout / rho))));
  for (std::size_t i = 0; i < th_rule.x.size(); ++i) {
    const double th = (th_rule.x[i] + 1.0) * 0.5 * (M_PI / 2.0);
    const double wth = th_rule.w[i] * 0.5 * (M_PI / 2.0);
    const double c = std::cos(th), sn = std::sin(th);
    double acc = 0.0;
    double edge = rho;
    for (int p = 0; p < rad_pieces; ++p) {
      const double next =
          (p + 1 == rad_pieces) ? Rout : rho * std::pow(Rout / rho, (p + 1.0) / rad_pieces);
      const double m2 = 0.5 * (edge + next), half = 0.5 * (next - edge);
      for (std::size_t j = 0; j < rad_rule.x.size(); ++j) {
        const double r = m2 + half * rad_rule.x[j];
        acc += rad_rule.w[j] * half * std::pow(r, -1.0 - 2.0 * s) * D(r * c, r * sn);
      }
      edge = next;
    }
    mid += wth * acc;
  }
  mid *= 4.0;

  const double tail = 2.0 * na * nb * 2.0 * M_PI * std::pow(Rout, -2.0 * s) / (2.0 * s);
  const double total = inner + mid + tail;
  if (!std::isfinite(total)) throw NonConvergenceError("seminorm_tensor_2d diverged");
  return total;
}

double funnel_profile(double x, double s) {
  const double a = std::fabs(x);
  if (a >= 1.0) return 0.0;
  return 1.0 - std::pow(a, 2.0 * s - 1.0);
}

Fn1D cosine_bump(double center, double halfwidth) {
  Fn1D f;
  f.support_lo = center - halfwidth;
  f.support_hi = center + halfwidth;
  f.f = [center, halfwidth](double x) {
    const double t = (x - center) / halfwidth;
    if (std::fabs(t) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * M_PI * t);
    return c * c;
  };
  return f;
}

Fn1D smooth_bump(double center, double halfwidth) {
  Fn1D f;
  f.support_lo = center - halfwidth;
  f.support_hi = center + halfwidth;
  f.f = [center, halfwidth](double x) {
    const double t = (x - center) / halfwidth;
    const double q = 1.0 - t * t;
    if (q <= 0.0) return 0.0;
    return std::exp(1.0 - 1.0 / q);
  };
  return f;
}

Fn1D funnel_fn(double s, double scale) {
  Fn1D f;
  f.support_lo = -scale;
  f.support_hi = scale;
  f.breakpoints = {0.0};
  f.f = [s, scale](double x) { return funnel_profile(x / scale, s); };
  return f;
}

}  // namespace fracspec::analytic
