#pragma once

#include <vector>

#include "fracspec/gagliardo.hpp"

namespace fracspec::capacity {

struct CapacityResult {
  double value = 0.0;              // length^{2-2s} in 2D, length^{1-2s} in 1D
  std::vector<double> minimizer;   // box layout
  double kkt_residual = 0.0;
  std::vector<int> active_set;     // nodes where the obstacle binds
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iterations = 20000;
  int dense_threshold = 2500;  // exact reduced solve below this many unknowns
};

/// Relative fractional capacity: minimize the form over { u >= 1 on sigma,
/// u = 0 off omega }, projected Barzilai-Borwein gradient plus an exact
/// reduced solve on the final active set. sigma and omega are box node sets,
/// sigma strictly inside omega.
CapacityResult capacity(const std::vector<int>& sigma, const std::vector<int>& omega,
                        const gagliardo::NonlocalForm& form, const SolveOptions& opt = {});

/// 1D capacity of the node nearest x0 relative to (a,b); s > 1/2 required.
CapacityResult point_capacity_1d(double x0, double a, double b, double s, int n,
                                 const SolveOptions& opt = {});

struct MazyaReport {
  double lhs = 0.0;       // regional form of u on Q_r
  double rhs_core = 0.0;  // (s / r^N) cap(sigma; B_R) ||u||^2
  double ratio = 0.0;     // empirical phi for this instance
  double cap = 0.0;
  bool skipped = false;   // both sides vanish
};

/// Empirical check of the capacitary Poincare inequality on one scenario;
/// requires dist(supp u, sigma) > 0.
MazyaReport mazya_check(const gagliardo::GridFunction& u, const std::vector<int>& sigma,
                        const std::vector<int>& q_nodes, const std::vector<int>& ball_nodes,
                        double r, const gagliardo::FractionalOrder& s,
                        const SolveOptions& opt = {});

struct ProjectionBoundReport {
  double cap = 0.0;        // lhs: computed capacity
  double rhs = 0.0;        // (m_s / A_dir) (r dist)^{(1-2s)/2} H1(proj)
  double proj_length = 0.0;
  double dist_to_boundary = 0.0;
  bool holds = false;
};

/// Geometric capacity lower bound via an axis projection; sigma strictly
/// inside the ball of radius r around the box center.
ProjectionBoundReport projection_bound_check(const std::vector<int>& sigma,
                                             const geometry::RasterDomain& ball_dom,
                                             double ball_radius, double s,
                                             const geometry::Direction& omega, double a_dir,
                                             const SolveOptions& opt = {});

}  // namespace fracspec::capacity
