#include "fracspec/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace fracspec::spectral {

namespace {

using gagliardo::NonlocalForm;

std::vector<int> active_nodes(const NonlocalForm& form) {
  std::vector<int> nodes;
  for (std::size_t i = 0; i < form.mask.size(); ++i)
    if (form.mask[i]) nodes.push_back(static_cast<int>(i));
  return nodes;
}

Eigen::MatrixXd dense_active(const NonlocalForm& form, const std::vector<int>& nodes) {
  const int n = static_cast<int>(nodes.size());
  Eigen::MatrixXd A(n, n);
  for (int a = 0; a < n; ++a) {
    const int ia = nodes[a] % form.nx, ja = nodes[a] / form.nx;
    for (int b = 0; b < n; ++b) {
      if (a == b) {
        A(a, a) = form.G0;
        continue;
      }
      const int ib = nodes[b] % form.nx, jb = nodes[b] / form.nx;
      A(a, b) = -form.weight(ib - ia, jb - ja);
    }
  }
  return A;
}

struct ActiveOp {
  const NonlocalForm& form;
  const std::vector<int>& nodes;
  mutable std::vector<double> box;
  ActiveOp(const NonlocalForm& f, const std::vector<int>& nd)
      : form(f), nodes(nd), box(static_cast<std::size_t>(f.nx) * f.ny, 0.0) {}
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    std::fill(box.begin(), box.end(), 0.0);
    for (std::size_t a = 0; a < nodes.size(); ++a) box[nodes[a]] = x(a);
    const std::vector<double> y = gagliardo::apply(form, box);
    Eigen::VectorXd out(nodes.size());
    for (std::size_t a = 0; a < nodes.size(); ++a) out(a) = y[nodes[a]];
    return out;
  }
};

}  // namespace

EigResult smallest_eigenvalue(const NonlocalForm& form, const EigOptions& opt) {
  const std::vector<int> nodes = active_nodes(form);
  const int n = static_cast<int>(nodes.size());
  if (n == 0) throw Error("smallest_eigenvalue: no active nodes");
  const double m = form.mass_weight;  // lumped mass diagonal

  const bool dense = n <= opt.dense_threshold;
  Eigen::MatrixXd A;
  std::optional<Eigen::LDLT<Eigen::MatrixXd>> ldlt;
  ActiveOp op(form, nodes);
  if (dense) {
    A = dense_active(form, nodes);
    ldlt.emplace(A);
  }
  auto matvec = [&](const Eigen::VectorXd& x) { return dense ? (A * x).eval() : op(x); };

  Eigen::VectorXd u = Eigen::VectorXd::Ones(n);
  u /= std::sqrt(m) * u.norm();
  EigResult res;
  Eigen::VectorXd Au = matvec(u);
  double lambda = u.dot(Au) / (m * u.squaredNorm());
  const int cg_cap = opt.cg_max_iterations > 0 ? opt.cg_max_iterations : 10 * n;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    const double resid = (Au - lambda * m * u).norm() / (m * u.norm());
    res.residual = resid;
    if (resid <= opt.tol * std::max(1.0, lambda)) break;
    // inverse iteration step: solve A y = M u
    Eigen::VectorXd rhs = m * u;
    Eigen::VectorXd y;
    if (dense) {
      y = ldlt->solve(rhs);
    } else {
      // preconditioned CG; the inner tolerance tracks the square of the
      // relative outer residual (inexact inverse iteration), capped so that
      // early iterations still make progress
      const double rel = resid / std::max(lambda, 1e-300);
      const double inner_tol = std::clamp(1e-2 * rel * rel, opt.cg_tol, 1e-2);
      Eigen::VectorXd x = (1.0 / lambda) * u;  // warm start
      Eigen::VectorXd r = rhs - matvec(x);
      Eigen::VectorXd z = r / form.G0;
      Eigen::VectorXd p = z;
      double rz = r.dot(z);
      const double target = inner_tol * rhs.norm();
      for (int k = 0; k < cg_cap && r.norm() > target; ++k) {
        const Eigen::VectorXd Ap = matvec(p);
        const double alpha = rz / p.dot(Ap);
        x += alpha * p;
        r -= alpha * Ap;
        z = r / form.G0;
        const double rz_new = r.dot(z);
        p = z + (rz_new / rz) * p;
        rz = rz_new;
      }
      y = x;
    }
    u = y / (std::sqrt(m) * y.norm());
    Au = matvec(u);
    lambda = u.dot(Au) / (m * u.squaredNorm());
  }
  if (it >= opt.max_iterations)
    throw NonConvergenceError("smallest_eigenvalue: iteration budget exhausted");

  res.lambda = lambda;
  res.iterations = it;
  // sign normalization: first nonzero component positive
  double sign = 0.0;
  for (int a = 0; a < n && sign == 0.0; ++a)
    if (u(a) != 0.0) sign = u(a) > 0.0 ? 1.0 : -1.0;
  if (sign < 0.0) u = -u;
  res.values.assign(static_cast<std::size_t>(form.nx) * form.ny, 0.0);
  for (int a = 0; a < n; ++a) res.values[nodes[a]] = u(a);
  return res;
}

void TrialDescriptor::validate() const {
  if (kind == Kind::kFunnel) {
    if (!(s > 0.5)) throw Error("funnel trial requires s > 1/2");
    if (!(eps > 0.0 && eps < 0.1)) throw Error("funnel trial requires 0 < eps < 1/10");
    if (n < 1) throw Error("funnel trial requires n >= 1");
  }
  if (kind == Kind::kProduct || kind == Kind::kTensorWithLineProfile)
    if (!(a > 0.0 && b > 0.0)) throw Error("product trial requires positive half-widths");
  if (kind == Kind::kScaledBump && n < 1) throw Error("scaled bump requires n >= 1");
}

std::pair<double, int> funnel_parameters(double s) {
  if (!(s > 0.5 && s < 1.0)) throw Error("funnel_parameters: requires 1/2 < s < 1");
  const double inv = 1.0 / (2.0 * s - 1.0);
  const double eps = std::pow(0.1, inv);
  const int n = sqr(static_cast<int>(std::floor(inv)) + 1);
  return {eps, n};
}

RayleighBound rayleigh_upper_bound(const TrialDescriptor& trial, double s, double tol) {
  trial.validate();
  RayleighBound out;
  switch (trial.kind) {
    case TrialDescriptor::Kind::kProduct:
    case TrialDescriptor::Kind::kTensorWithLineProfile:
    case TrialDescriptor::Kind::kScaledBump: {
      const double scale = trial.kind == TrialDescriptor::Kind::kScaledBump
                               ? static_cast<double>(trial.n)
                               : 1.0;
      analytic::TensorFn2D f;
      f.a = trial.kind == TrialDescriptor::Kind::kTensorWithLineProfile
                ? analytic::cosine_bump(trial.center.x, trial.a * scale)
                : analytic::smooth_bump(trial.center.x, trial.a * scale);
      f.b = analytic::smooth_bump(trial.center.y, trial.b * scale);
      out.seminorm_sq = analytic::seminorm_tensor_2d(f, s, tol);
      out.mass = analytic::l2_norm_sq_tensor_2d(f);
      out.value = out.seminorm_sq / out.mass;
      return out;
    }
    case TrialDescriptor::Kind::kFunnel: {
      // one-dimensional reduction: the 2D eigenvalue of the comb window is
      // bounded by alpha_s times the 1D quotient of u_n * phi_{n,s,eps};
      // the quotient itself is bounded by the triangle/sub-modularity split
      //   ([u_n] + |u|_inf sqrt(2n+1) eps^{1/2-s} [zeta_s])^2 / (n |u|^2_{A_eps})
      const double eps = trial.eps;
      const int n = trial.n;
      const analytic::Fn1D base = analytic::cosine_bump(0.0, 1.0);
      const double base_l2 = analytic::l2_norm_sq_1d(base);
      const double base_sem = analytic::seminorm_1d(base, s, tol);
      const double base_sup = analytic::sup_norm_1d(base);
      // [u_n] = n^{1/2-s} [u] with u normalized to unit L2 on (-1,1)
      const double un_sem = std::pow(n, 0.5 - s) * std::sqrt(base_sem / base_l2);
      const constants::ZetaDecomposition zeta = constants::zeta_seminorm(s, tol);
      const double phi_sem =
          std::sqrt(2.0 * n + 1.0) * std::pow(eps, 0.5 - s) * std::sqrt(zeta.total);
      // || u ||_{L2(A_eps)}^2 = 1 - excluded slivers around j/n
      double excluded = 0.0;
      for (int j = -n; j <= n; ++j) {
        const double c = static_cast<double>(j) / n;
        const double lo = std::max(-1.0, c - eps / n), hi = std::min(1.0, c + eps / n);
        if (hi <= lo) continue;
        const auto& g = base;
        excluded += [&] {
          double acc = 0.0;
          for (int q = 0; q < 8; ++q) {
            const double x = lo + (hi - lo) * (q + 0.5) / 8.0;
            acc += sqr(g.f(x));
          }
          return acc * (hi - lo) / 8.0;
        }();
      }
      const double denom_sq = std::max(1e-300, (base_l2 - excluded) / base_l2) * n;
      const double quotient_1d = sqr(un_sem + base_sup / std::sqrt(base_l2) * phi_sem) / denom_sq;
      out.via_product_lemma = true;
      out.seminorm_sq = quotient_1d;  // 1D quotient before the alpha_s factor
      out.mass = 1.0;
      out.value = constants::alpha(s) * quotient_1d;
      return out;
    }
  }
  throw Error("rayleigh_upper_bound: unknown trial kind");
}

std::vector<PointRemovalRow> point_removal_study(double side, Point node_pos, double s,
                                                 const std::vector<int>& grid_sizes,
                                                 const EigOptions& opt) {
  std::vector<PointRemovalRow> rows;
  for (int cells : grid_sizes) {
    geometry::RasterDomain dom;
    dom.h = side / cells;
    dom.nx = dom.ny = cells + 1;
    dom.origin = {0.0, 0.0};
    dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
    for (int j = 1; j + 1 < dom.ny; ++j)
      for (int i = 1; i + 1 < dom.nx; ++i) dom.mask[dom.index(i, j)] = 1;
    const gagliardo::FractionalOrder order(s);
    const auto form = gagliardo::assemble_2d(dom, order);
    PointRemovalRow row;
    row.h = dom.h;
    row.lambda_full = smallest_eigenvalue(form, opt).lambda;
    // remove the node nearest to node_pos
    geometry::RasterDomain punct = dom;
    const int i0 = static_cast<int>(std::lround((node_pos.x - dom.origin.x) / dom.h));
    const int j0 = static_cast<int>(std::lround((node_pos.y - dom.origin.y) / dom.h));
    if (!punct.inside(i0, j0)) throw Error("point_removal_study: node must be inside");
    punct.mask[punct.index(i0, j0)] = 0;
    auto pform = form;
    pform.mask = punct.mask;
    row.lambda_punctured = smallest_eigenvalue(pform, opt).lambda;
    row.gap = row.lambda_punctured - row.lambda_full;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SweepRow> bbm_sweep(const geometry::RasterDomain& dom,
                                const std::vector<double>& s_list,
                                std::optional<double> classical_lambda1,
                                const EigOptions& opt) {
  std::vector<SweepRow> rows;
  for (double s : s_list) {
    const gagliardo::FractionalOrder order(s);
    const auto form = gagliardo::assemble_2d(dom, order);
    SweepRow row;
    row.x = s;
    row.lambda = smallest_eigenvalue(form, opt).lambda;
    row.statistic = (1.0 - s) * row.lambda;
    if (classical_lambda1) row.statistic /= 0.5 * *classical_lambda1;
    rows.push_back(row);
  }
  return rows;
}

KSweepResult k_sweep(const std::vector<int>& k_list, double s, double h,
                     const EigOptions& opt) {
  if (!(s > 0.5)) throw Error("k_sweep: requires s > 1/2");
  KSweepResult out;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int k : k_list) {
    // shell/slug domain with punctures materialized as removed nodes
    const int n_k = static_cast<int>(std::floor(std::sqrt(static_cast<double>(k - 1))));
    const int m_k = (k - 1) - n_k * n_k;
    const double W = std::max(n_k, m_k) + 2.0 * h;
    geometry::RasterDomain dom;
    dom.h = h;
    const int nxc = static_cast<int>(std::lround(W / h));
    dom.nx = nxc + 1;
    dom.ny = static_cast<int>(std::lround((n_k + 1 + 4.0 * h) / h)) + 1;
    dom.origin = {-2.0 * h, -1.0 - 2.0 * h};
    dom.mask.assign(static_cast<std::size_t>(dom.nx) * dom.ny, 0);
    auto inside_shell = [&](Point p) {
      return p.x > 0.0 && p.x < n_k && p.y > 0.0 && p.y < n_k;
    };
    auto inside_slug = [&](Point p) {
      return p.x > 0.0 && p.x < m_k && p.y > -1.0 && p.y < 0.0;
    };
    auto interface = [&](Point p) {
      return std::fabs(p.y) < 0.25 * h && p.x > 0.0 && p.x < std::min(n_k, m_k);
    };
    for (int j = 1; j + 1 < dom.ny; ++j)
      for (int i = 1; i + 1 < dom.nx; ++i) {
        const Point p = dom.node(i, j);
        if (inside_shell(p) || inside_slug(p) || interface(p))
          dom.mask[dom.index(i, j)] = 1;
      }
    // punctured nodes removed from the mask (this experiment materializes them)
    geometry::RasterDomain shell_only = dom;
    for (int j = 0; j < dom.ny; ++j)
      for (int i = 0; i < dom.nx; ++i) {
        const Point p = dom.node(i, j);
        if (!inside_shell(p)) shell_only.mask[shell_only.index(i, j)] = 0;
      }
    auto puncture_node = [&](geometry::RasterDomain& d, double px, double py) {
      const int i = static_cast<int>(std::lround((px - d.origin.x) / d.h));
      const int j = static_cast<int>(std::lround((py - d.origin.y) / d.h));
      if (d.inside(i, j)) d.mask[d.index(i, j)] = 0;
    };
    for (int i = 0; i < n_k; ++i)
      for (int j = 0; j < n_k; ++j) {
        puncture_node(dom, i + 0.5, j + 0.5);
        puncture_node(shell_only, i + 0.5, j + 0.5);
      }
    for (int i = 0; i < m_k; ++i) puncture_node(dom, i + 0.5, -0.5);

    const gagliardo::FractionalOrder order(s, true);
    const auto form = gagliardo::assemble_2d(dom, order);
    KSweepRow row;
    row.k = k;
    row.lambda = smallest_eigenvalue(form, opt).lambda;
    auto sform = form;
    sform.mask = shell_only.mask;
    row.lambda_shell = smallest_eigenvalue(sform, opt).lambda;
    row.scaled = std::pow(static_cast<double>(k), s) * row.lambda;
    lo = std::min(lo, row.scaled);
    hi = std::max(hi, row.scaled);
    out.rows.push_back(row);
  }
  out.max_over_min = hi / lo;
  return out;
}

}  // namespace fracspec::spectral
