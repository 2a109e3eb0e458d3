#include <cmath>
#include <map>
#include <mutex>

#include "fracspec/gagliardo.hpp"
#include "fracspec/quadrature.hpp"

namespace fracspec::gagliardo {

namespace {

double b3(double x) {
  const double a = std::fabs(x);
  if (a >= 2.0) return 0.0;
  if (a <= 1.0) return 2.0 / 3.0 - a * a + a * a * a / 2.0;
  const double t = 2.0 - a;
  return t * t * t / 6.0;
}

// G(d) = I_A + 2 M(d) kbox - 2 I_S with
//   I_A  = int_{[-h,h]^2} K(z) [2M(d) - M(d-z) - M(d+z)] dz
//   kbox = int_{R^2 \ [-h,h]^2} K(z) dz
//   I_S  = int_{(d+[-2h,2h]^2) \ [-h,h]^2} K(z) M(d-z) dz
// where M(v) = h^2 b3(v1/h) b3(v2/h) and K(z) = |z|^{-2-2s}.
//
// I_A in polar over eight 45-degree wedges: along each ray the integrand is
// r^{1-2s} times a polynomial of degree <= 4 in r, so a Gauss-Jacobi rule with
// weight u^{1-2s} integrates it exactly; the theta dependence is analytic per
// wedge. I_S over whole lattice cells (lattice-aligned set difference) with
// tensor Gauss, subdividing cells near the origin.
struct Calc {
  double s, h;
  int nth, ncell, nsub;
  quad::Rule jac;
  const quad::Rule* leg_th;
  const quad::Rule* leg_c;
  double kbox_val;

  Calc(double s_, double h_, int nr = 7, int nth_ = 24, int ncell_ = 14, int nsub_ = 2)
      : s(s_), h(h_), nth(nth_), ncell(ncell_), nsub(nsub_) {
    jac = quad::gauss_jacobi01(nr, 1.0 - 2.0 * s);
    leg_th = &quad::gauss_legendre(nth);
    leg_c = &quad::gauss_legendre(ncell);
    double I = 0.0;
    for (int i = 0; i < nth; ++i) {
      const double t = (leg_th->x[i] + 1.0) * 0.5 * (M_PI / 4.0);
      I += leg_th->w[i] * 0.5 * (M_PI / 4.0) * std::pow(std::cos(t), 2.0 * s);
    }
    kbox_val = 8.0 * std::pow(h, -2.0 * s) / (2.0 * s) * I;
  }

  double M(double v1, double v2) const { return h * h * b3(v1 / h) * b3(v2 / h); }
  double K(double z1, double z2) const {
    return std::pow(z1 * z1 + z2 * z2, -1.0 - s);
  }

  double IA(int p, int q) const {
    if (std::max(std::abs(p), std::abs(q)) > 2) return 0.0;
    const double md = M(p * h, q * h);
    auto g = [&](double z1, double z2) {
      return 2.0 * md - M(p * h - z1, q * h - z2) - M(p * h + z1, q * h + z2);
    };
    double total = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double th0 = k * M_PI / 4.0, th1 = (k + 1) * M_PI / 4.0;
      for (int i = 0; i < nth; ++i) {
        const double th = th0 + (leg_th->x[i] + 1.0) * 0.5 * (th1 - th0);
        const double wth = leg_th->w[i] * 0.5 * (th1 - th0);
        const double c = std::cos(th), sn = std::sin(th);
        const double R = h / std::max(std::fabs(c), std::fabs(sn));
        double inner = 0.0;
        for (std::size_t j = 0; j < jac.x.size(); ++j) {
          const double r = R * jac.x[j];
          inner += jac.w[j] * (g(r * c, r * sn) / (r * r));
        }
        total += wth * std::pow(R, 2.0 - 2.0 * s) * inner;
      }
    }
    return total;
  }

  double IS(int p, int q) const {
    double total = 0.0;
    for (int a = p - 2; a < p + 2; ++a)
      for (int b = q - 2; b < q + 2; ++b) {
        if (a >= -1 && a <= 0 && b >= -1 && b <= 0) continue;  // cell inside [-h,h]^2
        const double cx = (a + 0.5) * h, cy = (b + 0.5) * h;
        const int sub = (std::sqrt(cx * cx + cy * cy) < 2.5 * h) ? nsub : 1;
        const double cw = h / sub;
        for (int sa = 0; sa < sub; ++sa)
          for (int sb = 0; sb < sub; ++sb) {
            const double x0 = a * h + sa * cw, y0 = b * h + sb * cw;
            for (int i = 0; i < ncell; ++i) {
              const double z1 = x0 + (leg_c->x[i] + 1.0) * 0.5 * cw;
              const double wi = leg_c->w[i] * 0.5 * cw;
              for (int j = 0; j < ncell; ++j) {
                const double z2 = y0 + (leg_c->x[j] + 1.0) * 0.5 * cw;
                const double wq = wi * leg_c->w[j] * 0.5 * cw;
                total += wq * K(z1, z2) * M(p * h - z1, q * h - z2);
              }
            }
          }
      }
    return total;
  }

  double G(int p, int q) const {
    p = std::abs(p);
    q = std::abs(q);
    const double md = M(p * h, q * h);
    return IA(p, q) + 2.0 * md * kbox_val - 2.0 * IS(p, q);
  }
};

}  // namespace

double stencil_entry_2d(int p, int q, double h, double s) {
  Calc calc(s, h);
  return calc.G(p, q);
}

double far_weight_2d(int p, int q, double h, double s) {
  const double d2 = (static_cast<double>(p) * p + static_cast<double>(q) * q) * h * h;
  const double K = std::pow(d2, -1.0 - s);
  const double lapK = (2.0 + 2.0 * s) * (2.0 + 2.0 * s) * std::pow(d2, -2.0 - s);
  const double h2 = h * h;
  return 2.0 * (h2 * h2 * K + (h2 * h2 * h2 / 6.0) * lapK);
}

namespace detail {

// assembles the quarter weight table for a box grid
void fill_table_2d(NonlocalForm& form) {
  const int nx = form.nx, ny = form.ny;
  Calc calc(form.s, form.h);
  form.G0 = calc.G(0, 0);
  form.w.assign(static_cast<std::size_t>(nx) * ny, 0.0);
  const int W = form.exact_window < 0 ? std::max(nx, ny) : form.exact_window;
  std::map<std::pair<int, int>, double> cache;
  for (int q = 0; q < ny; ++q)
    for (int p = 0; p < nx; ++p) {
      if (p == 0 && q == 0) continue;
      double v;
      if (std::max(p, q) <= W) {
        const auto key = std::minmax(p, q);
        auto it = cache.find({key.second, key.first});
        if (it == cache.end())
          it = cache.emplace(std::make_pair(key.second, key.first),
                             -calc.G(key.second, key.first)).first;
        v = it->second;
      } else {
        v = far_weight_2d(p, q, form.h, form.s);
      }
      form.w[static_cast<std::size_t>(q) * nx + p] = v;
    }
}

void fill_table_1d(NonlocalForm& form) {
  const int n = form.nx;
  form.G0 = stencil_entry_1d(0, form.h, form.s);
  form.w.assign(n, 0.0);
  const int W = form.exact_window < 0 ? n : form.exact_window;
  for (int p = 1; p < n; ++p)
    form.w[p] = (p <= W) ? -stencil_entry_1d(p, form.h, form.s)
                         : far_weight_1d(p, form.h, form.s);
}

}  // namespace detail

}  // namespace fracspec::gagliardo
