#pragma once

#include <optional>
#include <vector>

#include "fracspec/analytic.hpp"
#include "fracspec/constants.hpp"
#include "fracspec/gagliardo.hpp"

namespace fracspec::spectral {

struct EigResult {
  double lambda = 0.0;               // length^{-2s}
  gagliardo::GridFunction vector;    // only set for 2D solves with a domain
  std::vector<double> values;        // box layout eigenvector
  int iterations = 0;
  double residual = 0.0;             // ||A u - lambda M u|| / ||M u||
};

struct EigOptions {
  double tol = 1e-8;
  int max_iterations = 400;
  int dense_threshold = 2500;
  double cg_tol = 1e-12;
  int cg_max_iterations = 0;  // 0: 10 n
};

/// Smallest eigenvalue of A u = lambda M u on the form's active set (lumped
/// diagonal mass), by inverse iteration with a deterministic all-ones start;
/// dense factorization below dense_threshold unknowns, otherwise conjugate
/// gradient inner solves on the stencil matvec.
EigResult smallest_eigenvalue(const gagliardo::NonlocalForm& form, const EigOptions& opt = {});

struct TrialDescriptor {
  enum class Kind { kScaledBump, kFunnel, kProduct, kTensorWithLineProfile };
  Kind kind = Kind::kProduct;
  // scaled_bump(n) / funnel(s, eps, n)
  int n = 1;
  double s = 0.0;
  double eps = 0.0;
  // product(a, b): tensor bump half-widths
  double a = 1.0;
  double b = 1.0;
  // placement
  Point center{0.0, 0.0};

  void validate() const;
};

/// Step-5 parameter choice: eps = (1/10)^{1/(2s-1)}, n = (floor(1/(2s-1))+1)^2.
std::pair<double, int> funnel_parameters(double s);

struct RayleighBound {
  double value = 0.0;      // upper bound for the first eigenvalue
  double seminorm_sq = 0.0;
  double mass = 0.0;
  bool via_product_lemma = false;  // 2D bound = alpha_s * 1D quotient
};

/// Rayleigh quotient of an analytic trial by adaptive quadrature; funnel
/// trials bound the 2D eigenvalue through the one-dimensional reduction
/// (alpha_s times the 1D quotient of u_n phi_{n,s,eps}).
RayleighBound rayleigh_upper_bound(const TrialDescriptor& trial, double s, double tol);

struct PointRemovalRow {
  double h = 0.0;
  double lambda_full = 0.0;
  double lambda_punctured = 0.0;
  double gap = 0.0;
};

/// Eigenvalue gap from removing one node, across a mesh refinement sequence.
std::vector<PointRemovalRow> point_removal_study(double side, Point node_pos, double s,
                                                 const std::vector<int>& grid_sizes,
                                                 const EigOptions& opt = {});

struct SweepRow {
  double x = 0.0;       // parameter (s or k)
  double lambda = 0.0;
  double statistic = 0.0;
};

/// (s, (1-s) lambda_1^s) on a domain; reference column (1/2) lambda_1 when a
/// classical eigenvalue is supplied.
std::vector<SweepRow> bbm_sweep(const geometry::RasterDomain& dom,
                                const std::vector<double>& s_list,
                                std::optional<double> classical_lambda1 = std::nullopt,
                                const EigOptions& opt = {});

struct KSweepRow {
  int k = 0;
  double lambda = 0.0;          // punctured-domain eigenvalue
  double lambda_shell = 0.0;    // punctured n_k-square eigenvalue
  double scaled = 0.0;          // k^s * lambda
};

struct KSweepResult {
  std::vector<KSweepRow> rows;
  double max_over_min = 0.0;  // boundedness statistic of k^s lambda
};

/// Eigensolves on the optimal family at fixed s > 1/2 (punctures materialized
/// as removed nodes for this experiment).
KSweepResult k_sweep(const std::vector<int>& k_list, double s, double h,
                     const EigOptions& opt = {});

}  // namespace fracspec::spectral
