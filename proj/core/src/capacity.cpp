#include "fracspec/capacity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fracspec/constants.hpp"

namespace fracspec::capacity {

namespace {

using gagliardo::NonlocalForm;

// dense principal submatrix of A = G0 I - W on the given nodes
Eigen::MatrixXd dense_submatrix(const NonlocalForm& form, const std::vector<int>& nodes) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd A(n, n);
  const int nx = form.nx;
  for (int a = 0; a < n; ++a) {
    const int ia = nodes[a] % nx, ja = nodes[a] / nx;
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        A(a, a) = form.G0;
        continue;
      }
      const int ib = nodes[b] % nx, jb = nodes[b] / nx;
      A(a, b) = -form.weight(ib - ia, jb - ja);
    }
  }
  return A;
}

struct SubOperator {
  const NonlocalForm& form;
  const std::vector<int>& nodes;
  mutable std::vector<double> box;

  SubOperator(const NonlocalForm& f, const std::vector<int>& nd)
      : form(f), nodes(nd), box(static_cast<std::size_t>(f.nx) * f.ny, 0.0) {}

  // y = A_sub x
  std::vector<double> operator()(const std::vector<double>& x) const {
    std::fill(box.begin(), box.end(), 0.0);
    for (std::size_t a = 0; a < nodes.size(); ++a) box[nodes[a]] = x[a];
    const std::vector<double> y = gagliardo::apply(form, box);
    std::vector<double> out(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) out[a] = y[nodes[a]];
    return out;
  }
};

template <class MatVec>
std::vector<double> conj_grad(const MatVec& A, const std::vector<double>& rhs, double diag,
                              double tol, int max_it) {
  const std::size_t n = rhs.size();
  std::vector<double> x(n, 0.0), r = rhs, z(n), p(n), Ap;
  for (std::size_t i = 0; i < n; ++i) p[i] = r[i] / diag;
  z = p;
  double rz = 0.0, rhs_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rz += r[i] * z[i];
    rhs_norm += rhs[i] * rhs[i];
  }
  rhs_norm = std::sqrt(rhs_norm);
  if (rhs_norm == 0.0) return x;
  for (int it = 0; it < max_it; ++it) {
    Ap = A(p);
    double pAp = 0.0;
    for (std::size_t i = 0; i < n; ++i) pAp += p[i] * Ap[i];
    const double alpha = rz / pAp;
    double rnorm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
      rnorm += r[i] * r[i];
    }
    if (std::sqrt(rnorm) <= tol * rhs_norm) break;
    double rz_new = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = r[i] / diag;
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  return x;
}

}  // namespace

CapacityResult capacity(const std::vector<int>& sigma, const std::vector<int>& omega,
                        const NonlocalForm& form, const SolveOptions& opt) {
  const std::size_t box = static_cast<std::size_t>(form.nx) * form.ny;
  CapacityResult res;
  res.minimizer.assign(box, 0.0);
  if (sigma.empty()) return res;  // unconstrained minimum

  std::vector<char> in_omega(box, 0), in_sigma(box, 0);
  for (int i : omega) in_omega[i] = 1;
  for (int i : sigma) {
    if (!in_omega[i]) throw Error("capacity: sigma must be contained in omega");
    in_sigma[i] = 1;
  }
  const std::vector<int>& vars = omega;
  const int n = static_cast<int>(vars.size());
  std::vector<int> local_sigma, free_local;
  for (int a = 0; a < n; ++a)
    (in_sigma[vars[a]] ? local_sigma : free_local).push_back(a);

  const bool dense = n <= opt.dense_threshold;
  Eigen::MatrixXd A;
  SubOperator subop(form, vars);
  if (dense) A = dense_submatrix(form, vars);
  auto matvec = [&](const std::vector<double>& x) {
    if (!dense) return subop(x);
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
    const Eigen::VectorXd y = A * xv;
    return std::vector<double>(y.data(), y.data() + n);
  };

  std::vector<double> u(n, 0.0);
  for (int a : local_sigma) u[a] = 1.0;
  auto gradient = [&](const std::vector<double>& v) {
    std::vector<double> g = matvec(v);
    for (double& x : g) x *= 2.0;
    return g;
  };
  auto kkt_residual = [&](const std::vector<double>& v, const std::vector<double>& g) {
    double r = 0.0;
    for (int a = 0; a < n; ++a) {
      double step = v[a] - g[a];
      if (in_sigma[vars[a]]) step = std::max(step, 1.0);
      r = std::max(r, std::fabs(v[a] - step));
    }
    return r;
  };

  // projected gradient with Barzilai-Borwein steps; a loose stop suffices
  // because the exact reduced solve below polishes the minimizer
  std::vector<double> grad = gradient(u);
  double step = 1.0 / form.G0;
  std::vector<double> u_prev, g_prev;
  int it = 0;
  double scale = 1.0;
  for (double g : grad) scale = std::max(scale, std::fabs(g));
  const int pg_budget = std::min(opt.max_iterations, 300);
  const double pg_tol = std::max(1e-8 * scale, 0.01 * opt.tol * scale);
  for (; it < pg_budget; ++it) {
    if (kkt_residual(u, grad) <= pg_tol) break;
    u_prev = u;
    g_prev = grad;
    for (int a = 0; a < n; ++a) u[a] -= step * grad[a];
    for (int a : local_sigma) u[a] = std::max(u[a], 1.0);
    grad = gradient(u);
    double ss = 0.0, sy = 0.0;
    for (int a = 0; a < n; ++a) {
      const double du = u[a] - u_prev[a];
      ss += du * du;
      sy += du * (grad[a] - g_prev[a]);
    }
    step = (sy > 1e-300) ? ss / sy : 1.0 / form.G0;
  }
  res.iterations = it;

  // maximum principle: the obstacle binds on all of sigma, so polish with the
  // exact reduced solve (u = 1 pinned on sigma)
  if (!free_local.empty()) {
    const int m = static_cast<int>(free_local.size());
    if (dense) {
      Eigen::MatrixXd Aff(m, m);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
      for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) Aff(a, b) = A(free_local[a], free_local[b]);
        for (int c : local_sigma) rhs(a) -= A(free_local[a], c);
      }
      const Eigen::VectorXd uf = Eigen::LDLT<Eigen::MatrixXd>(Aff).solve(rhs);
      for (int a = 0; a < m; ++a) u[free_local[a]] = uf(a);
    } else {
      // rhs = -A[free, sigma] 1
      std::vector<double> ones(n, 0.0);
      for (int c : local_sigma) ones[c] = 1.0;
      const std::vector<double> As = matvec(ones);
      std::vector<double> rhs(m);
      for (int a = 0; a < m; ++a) rhs[a] = -As[free_local[a]];
      auto Aff = [&](const std::vector<double>& xf) {
        std::vector<double> full(n, 0.0);
        for (int a = 0; a < m; ++a) full[free_local[a]] = xf[a];
        const std::vector<double> y = matvec(full);
        std::vector<double> out(m);
        for (int a = 0; a < m; ++a) out[a] = y[free_local[a]];
        return out;
      };
      const std::vector<double> uf =
          conj_grad(Aff, rhs, form.G0, 1e-13, std::max(200, 10 * m));
      for (int a = 0; a < m; ++a) u[free_local[a]] = uf[a];
    }
    for (int c : local_sigma) u[c] = 1.0;
  }
  grad = gradient(u);
  res.kkt_residual = kkt_residual(u, grad);

  for (int a = 0; a < n; ++a) res.minimizer[vars[a]] = u[a];
  for (int a : local_sigma)
    if (u[a] <= 1.0 + 1e-9) res.active_set.push_back(vars[a]);
  res.value = gagliardo::evaluate(form, res.minimizer);
  return res;
}

CapacityResult point_capacity_1d(double x0, double a, double b, double s, int n,
                                 const SolveOptions& opt) {
  if (!(s > 0.5)) throw Error("point_capacity_1d: points have zero capacity for s <= 1/2");
  if (!(a < x0 && x0 < b)) throw Error("point_capacity_1d: x0 must lie in (a,b)");
  const auto mesh = gagliardo::LineMesh::interval(a, b, n);
  const gagliardo::FractionalOrder order(s, true);
  const auto form = gagliardo::assemble_1d(mesh, order);
  int nearest = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i + 1 < n; ++i) {
    const double d = std::fabs(mesh.node(i) - x0);
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  std::vector<int> omega;
  for (int i = 1; i + 1 < n; ++i) omega.push_back(i);
  return capacity({nearest}, omega, form, opt);
}

MazyaReport mazya_check(const gagliardo::GridFunction& u, const std::vector<int>& sigma,
                        const std::vector<int>& q_nodes, const std::vector<int>& ball_nodes,
                        double r, const gagliardo::FractionalOrder& s,
                        const SolveOptions& opt) {
  u.validate();
  const geometry::RasterDomain& dom = *u.dom;
  for (int i : sigma) {
    const int ix = i % dom.nx, iy = i / dom.nx;
    for (int dj = -1; dj <= 1; ++dj)
      for (int di = -1; di <= 1; ++di) {
        const int jx = ix + di, jy = iy + dj;
        if (jx < 0 || jx >= dom.nx || jy < 0 || jy >= dom.ny) continue;
        if (u.values[dom.index(jx, jy)] != 0.0)
          throw Error("mazya_check: u must vanish near the Dirichlet region");
      }
  }
  const auto form = gagliardo::assemble_2d(dom, s);
  MazyaReport rep;
  rep.lhs = gagliardo::evaluate_regional(form, u.values, q_nodes);
  double mass = 0.0;
  for (int i : q_nodes) mass += u.values[i] * u.values[i];
  mass *= form.mass_weight;
  if (rep.lhs == 0.0 && mass == 0.0) {
    rep.skipped = true;
    return rep;
  }
  const auto cap = capacity(sigma, ball_nodes, form, opt);
  rep.cap = cap.value;
  rep.rhs_core = (s.s / (r * r)) * cap.value * mass;
  rep.ratio = rep.rhs_core > 0.0 ? rep.lhs / rep.rhs_core : 0.0;
  return rep;
}

ProjectionBoundReport projection_bound_check(const std::vector<int>& sigma,
                                             const geometry::RasterDomain& ball_dom,
                                             double ball_radius, double s,
                                             const geometry::Direction& omega, double a_dir,
                                             const SolveOptions& opt) {
  if (sigma.empty()) throw Error("projection_bound_check: empty sigma");
  const gagliardo::FractionalOrder order(s, true);
  const auto form = gagliardo::assemble_2d(ball_dom, order);
  const Point c{ball_dom.origin.x + 0.5 * (ball_dom.nx - 1) * ball_dom.h,
                ball_dom.origin.y + 0.5 * (ball_dom.ny - 1) * ball_dom.h};
  std::vector<int> ball_nodes;
  for (int j = 0; j < ball_dom.ny; ++j)
    for (int i = 0; i < ball_dom.nx; ++i) {
      const Point p = ball_dom.node(i, j);
      if (norm(p - c) < ball_radius && ball_dom.mask[ball_dom.index(i, j)])
        ball_nodes.push_back(static_cast<int>(ball_dom.index(i, j)));
    }
  std::vector<std::pair<int, int>> sig_nodes;
  double dist = std::numeric_limits<double>::infinity();
  for (int idx : sigma) {
    const int i = idx % ball_dom.nx, j = idx / ball_dom.nx;
    sig_nodes.push_back({i, j});
    dist = std::min(dist, ball_radius - norm(ball_dom.node(i, j) - c));
  }
  ProjectionBoundReport rep;
  rep.dist_to_boundary = dist;
  if (!(dist > 0.0))
    throw Error("projection_bound_check: sigma must lie strictly inside the ball");
  const auto proj = geometry::project(sig_nodes, ball_dom, omega);
  rep.proj_length = proj.length;
  const auto cap = capacity(sigma, ball_nodes, form, opt);
  rep.cap = cap.value;
  const double m_s = constants::morrey_m(s);
  rep.rhs = (m_s / a_dir) * std::pow(ball_radius * dist, (1.0 - 2.0 * s) / 2.0) * proj.length;
  rep.holds = rep.cap >= rep.rhs;
  return rep;
}

}  // namespace fracspec::capacity
