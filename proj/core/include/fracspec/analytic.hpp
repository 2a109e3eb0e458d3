#pragma once

#include <functional>
#include <vector>

#include "fracspec/common.hpp"

namespace fracspec::analytic {

/// Piecewise-smooth compactly supported 1D function with listed singular /
/// non-smooth points (cusps, kinks, support ends).
struct Fn1D {
  std::function<double(double)> f;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::vector<double> breakpoints;  // includes cusps; support ends added automatically
};

/// Squared W^{s,2}(R) seminorm by direct adaptive double quadrature of the
/// defining integral: interior part over {(x, x+z)} with graded z-handling,
/// exterior part in closed form against the kernel tail.
/// Throws NonConvergenceError when the refinement budget is exhausted.
double seminorm_1d(const Fn1D& f, double s, double tol);

/// L2 norm squared and sup norm over the support (adaptive / sampled).
double l2_norm_sq_1d(const Fn1D& f, double tol = 1e-12);
double sup_norm_1d(const Fn1D& f, int samples = 20001);

/// Tensor-product 2D function a(x1) b(x2); the squared W^{s,2}(R^2) seminorm
/// uses the exact reduction to a 2D integral of the autocorrelation defect
///   [f]^2 = int K(z) D(z) dz,  D(z) = 2(|a|^2 |b|^2 - C_a(z1) C_b(z2)).
struct TensorFn2D {
  Fn1D a;
  Fn1D b;
};

double seminorm_tensor_2d(const TensorFn2D& f, double s, double tol);
double l2_norm_sq_tensor_2d(const TensorFn2D& f, double tol = 1e-12);

/// Funnel profile (1 - |x|^{2s-1})_+ .
double funnel_profile(double x, double s);

/// Some ready-made smooth profiles used as trial functions.
Fn1D cosine_bump(double center, double halfwidth);         // cos^2 profile
Fn1D smooth_bump(double center, double halfwidth);         // exp bump, C^inf
Fn1D funnel_fn(double s, double scale = 1.0);              // funnel profile at given s

}  // namespace fracspec::analytic
