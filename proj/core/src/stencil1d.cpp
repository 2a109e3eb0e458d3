#include <array>
#include <cmath>

#include "fracspec/gagliardo.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec::gagliardo {

namespace {

// Cubic B-spline b3 (autocorrelation of the unit hat), piece on [k, k+1].
struct Cubic {
  std::array<double, 4> c{};
};

Cubic b3_piece(int k) {
  Cubic p;
  switch (k) {
    case 0:  p.c = {2.0 / 3.0, 0.0, -1.0, 0.5}; break;        // 2/3 - x^2 + x^3/2
    case 1:  p.c = {8.0 / 6.0, -2.0, 1.0, -1.0 / 6.0}; break; // (2-x)^3/6
    case -1: p.c = {2.0 / 3.0, 0.0, -1.0, -0.5}; break;
    case -2: p.c = {8.0 / 6.0, 2.0, 1.0, 1.0 / 6.0}; break;
    default: break;  // zero
  }
  return p;
}

// q(z) = p(a + b z)
Cubic compose_affine(const Cubic& p, double a, double b) {
  Cubic q;
  double A[4][4] = {};
  A[0][0] = 1;
  A[1][0] = a; A[1][1] = b;
  A[2][0] = a * a; A[2][1] = 2 * a * b; A[2][2] = b * b;
  A[3][0] = a * a * a; A[3][1] = 3 * a * a * b; A[3][2] = 3 * a * b * b; A[3][3] = b * b * b;
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j <= k; ++j) q.c[j] += p.c[k] * A[k][j];
  return q;
}

double b3(double x) {
  const double a = std::fabs(x);
  if (a >= 2.0) return 0.0;
  if (a <= 1.0) return 2.0 / 3.0 - a * a + a * a * a / 2.0;
  const double t = 2.0 - a;
  return t * t * t / 6.0;
}

}  // namespace

double stencil_entry_1d(int p, double h, double s) {
  // G(p) = 2 \int_0^inf z^{-1-2s} [2 m(ph) - m(ph - z) - m(ph + z)] dz,
  // m(t) = h b3(t/h). On z in [q h, (q+1) h] the bracket is a single cubic.
  p = std::abs(p);
  const double md = h * b3(static_cast<double>(p));
  double total = 0.0;
  const int qmax = p + 2;
  for (int q = 0; q < qmax; ++q) {
    Cubic acc;
    acc.c = {2.0 * md, 0.0, 0.0, 0.0};
    {
      const int k = p - q - 1;  // piece of b3(p - z/h) for z/h in [q, q+1]
      if (k >= -2 && k <= 1) {
        const Cubic piece = compose_affine(b3_piece(k), static_cast<double>(p), -1.0 / h);
        for (int i = 0; i < 4; ++i) acc.c[i] -= h * piece.c[i];
      }
    }
    {
      const int k = p + q;  // piece of b3(p + z/h)
      if (k >= -2 && k <= 1) {
        const Cubic piece = compose_affine(b3_piece(k), static_cast<double>(p), 1.0 / h);
        for (int i = 0; i < 4; ++i) acc.c[i] -= h * piece.c[i];
      }
    }
    if (q == 0) {
      // even in z with matching value at 0: constant and linear parts cancel
      acc.c[0] = 0.0;
      acc.c[1] = 0.0;
    }
    const double z0 = q * h, z1 = (q + 1) * h;
    for (int i = (q == 0 ? 2 : 0); i < 4; ++i)
      if (acc.c[i] != 0.0)
        total += acc.c[i] * quad::power_integral(i - 1.0 - 2.0 * s, z0, z1);
  }
  if (md != 0.0) {
    const double Z = qmax * h;
    total += 2.0 * md * std::pow(Z, -2.0 * s) / (2.0 * s);
  }
  return 2.0 * total;
}

double far_weight_1d(int p, double h, double s) {
  const double d = std::abs(p) * h;
  const double K = std::pow(d, -1.0 - 2.0 * s);
  const double K2 = (1.0 + 2.0 * s) * (2.0 + 2.0 * s) * std::pow(d, -3.0 - 2.0 * s);
  return 2.0 * (h * h * K + (h * h * h * h / 6.0) * K2);
}

}  // namespace fracspec::gagliardo
