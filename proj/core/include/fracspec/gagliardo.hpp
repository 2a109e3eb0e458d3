#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "fracspec/geometry.hpp"

namespace fracspec::gagliardo {

struct FractionalOrder {
  explicit FractionalOrder(double order, bool require_strict_half = false)
      : s(order), strict_half(require_strict_half) {
    if (!(s > 0.0 && s < 1.0)) throw Error("fractional order must lie in (0,1)");
    if (strict_half && !(s > 0.5)) throw Error("operation requires s > 1/2");
  }
  double s;
  bool strict_half;
};

/// Uniform 1D mesh on [a, a+(n-1)h]; mask marks active (interior) nodes,
/// endpoints are always inactive (zero extension).
struct LineMesh {
  double a = 0.0;
  double h = 0.0;
  int n = 0;
  std::vector<std::uint8_t> mask;

  static LineMesh interval(double a, double b, int n);
  double node(int i) const { return a + i * h; }
};

/// Nodal values over a raster box; identically zero outside the mask.
struct GridFunction {
  const geometry::RasterDomain* dom = nullptr;
  std::vector<double> values;  // box layout, nx*ny

  static GridFunction zeros(const geometry::RasterDomain& dom);
  void validate() const;
};

/// Symmetric PSD quadratic form discretizing the squared W^{s,2} seminorm of
/// the zero-extended nodal interpolant:
///
///   Q(u) = (1/2) sum_{i != j} w(x_i - x_j) (u_i - u_j)^2 + sum_i kappa_i u_i^2
///
/// with translation-invariant weights w(d) (nonnegative in the operating
/// regime) and exterior diagonal kappa_i = G0 - sum_{j in box} w(x_i - x_j);
/// equivalently A = G0 I - W with constant diagonal G0. Weights come from
/// singularity-adapted quadrature up to `exact_window` cells and from the
/// asymptotic kernel expansion beyond.
struct NonlocalForm {
  int dim = 2;
  double s = 0.0;
  double h = 0.0;
  int nx = 0;
  int ny = 1;
  double G0 = 0.0;
  std::vector<double> w;  // quarter table: w[|q|*nx + |p|]; w[0] unused
  std::vector<std::uint8_t> mask;
  std::optional<std::vector<int>> region;  // node subset E: double sum over ExE only
  double mass_weight = 0.0;                // lumped mass per node
  int exact_window = 0;

  double weight(int p, int q = 0) const {
    return w[static_cast<std::size_t>(std::abs(q)) * nx + std::abs(p)];
  }
};

struct FormOptions {
  /// Displacements with max-norm <= window get exact quadrature; beyond, the
  /// asymptotic kernel. window < 0 means the whole grid.
  int window = 4;
  std::optional<std::vector<int>> region;
};

inline FormOptions full_window_options() {
  FormOptions o;
  o.window = -1;
  return o;
}

NonlocalForm assemble_2d(const geometry::RasterDomain& dom, const FractionalOrder& s,
                         const FormOptions& opt = {});
/// 1D stencil entries are closed-form, so the default window covers the grid.
NonlocalForm assemble_1d(const LineMesh& mesh, const FractionalOrder& s,
                         const FormOptions& opt = full_window_options());

/// y = A u on the box (u is box layout and must vanish off the mask for the
/// zero-extension semantics; apply itself is mask-agnostic).
std::vector<double> apply(const NonlocalForm& form, const std::vector<double>& u);

/// Q(u); regional when the form carries a region. Deterministic summation.
double evaluate(const NonlocalForm& form, const std::vector<double>& u);
double evaluate(const NonlocalForm& form, const GridFunction& u);

/// Regional value over an explicit node subset (pairs within E only).
double evaluate_regional(const NonlocalForm& form, const std::vector<double>& u,
                         const std::vector<int>& nodes);

/// Exterior diagonal kappa_i = G0 - in-box row sum (reporting; not needed to
/// evaluate).
std::vector<double> exterior_kappa(const NonlocalForm& form);

/// Directional seminorm along an axis direction: per-line 1D full-space
/// seminorms of the line traces, summed over lines times h. Non-axis
/// directions resample bilinearly (approximate path, flagged in the result).
struct DirectionalResult {
  double value = 0.0;
  bool approximate = false;
};
DirectionalResult directional_seminorm(const GridFunction& u, const geometry::Direction& dir,
                                       const FractionalOrder& s);

/// Lumped-mass average over a node subset.
double average(const GridFunction& u, const std::vector<int>& nodes);

/// Binary stencil dump (header + displacement/weight table) for regression
/// pinning.
void dump_stencil(std::ostream& os, const NonlocalForm& form);
NonlocalForm load_stencil(std::istream& is);

// -- internal stencil entries, exposed for tests ---------------------------

/// 1D: exact closed-form Galerkin entry G(p) (piecewise-cubic autocorrelation
/// against the kernel integrates to power functions).
double stencil_entry_1d(int p, double h, double s);

/// 2D: quadrature Galerkin entry G(p,q).
double stencil_entry_2d(int p, int q, double h, double s);

/// 2D asymptotic far-field weight (positive).
double far_weight_2d(int p, int q, double h, double s);
double far_weight_1d(int p, double h, double s);

}  // namespace fracspec::gagliardo
