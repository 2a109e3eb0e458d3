#pragma once

#include <functional>
#include <vector>

namespace fracspec::quad {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre rule on [-1,1]; cached per order.
const Rule& gauss_legendre(int n);

/// Gauss-Jacobi rule on [0,1] with weight u^beta, beta > -1.
/// Integrates u^beta * p(u) exactly for polynomials p up to degree 2n-1.
Rule gauss_jacobi01(int n, double beta);

/// \int_a^b f via n-point Gauss-Legendre.
double gauss(const std::function<double(double)>& f, double a, double b, int n = 16);

/// Exact \int_{z0}^{z1} z^e dz for 0 < z0 < z1, any real e (log branch at e = -1,
/// expm1-stable near it).
double power_integral(double e, double z0, double z1);

struct AdaptiveOptions {
  double abs_tol = 1e-10;
  int max_depth = 14;
  /// Breakpoints where the integrand is non-smooth; the initial partition
  /// splits there, and geometric grading is applied toward each of them.
  std::vector<double> breakpoints;
  /// Number of geometric grading levels toward singular breakpoints.
  int grade_levels = 30;
  double grade_ratio = 0.25;
};

/// Adaptive Gauss quadrature of f over [a,b]. Handles integrable endpoint /
/// breakpoint singularities through geometric grading plus local refinement.
double adaptive(const std::function<double(double)>& f, double a, double b,
                const AdaptiveOptions& opt = {});

}  // namespace fracspec::quad
