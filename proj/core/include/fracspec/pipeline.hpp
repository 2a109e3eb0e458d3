#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracspec/capacity.hpp"
#include "fracspec/constants.hpp"
#include "fracspec/fatness.hpp"
#include "fracspec/spectral.hpp"

namespace fracspec::pipeline {

struct FamilySpec {
  enum class Kind { kShellSlug, kCombWindow, kDisk, kSquare, kAnnulus, kRandomPerforated };
  Kind kind = Kind::kSquare;
  int k = 1;                  // shell_slug (k >= 2), comb punctures k-1
  double h = 1.0 / 16.0;
  double margin = 0.25;       // outside ring beyond the shape
  // disk / annulus / square parameters
  double radius = 1.0;
  double inner_radius = 0.4;
  double side = 1.0;
  // comb window
  double comb_halfwidth = 8.0;  // x1 in (-W, W); grown to the Step-5 n when needed
  double comb_below = 2.0;      // vertical window [-below, k + above]
  double comb_above = 2.0;
  // random perforated
  unsigned seed = 1;
  int hole_count = 4;

  void validate() const;
};

/// Shell/slug and comb constructions plus the benchmark shapes.
geometry::RasterDomain build_family(const FamilySpec& spec);

/// n_k = floor(sqrt(k-1)), m_k = (k-1) - n_k^2 for the shell/slug family.
std::pair<int, int> shell_parameters(int k);

struct TileRecord {
  int ti = 0, tj = 0;                 // tile lattice index
  fatness::FatnessCertificate cert;
  double cap_lower = 0.0;             // capacity lower bound used
  double tile_bound = 0.0;            // (s/r^N) phi22 cap
  bool cap_via_qp = false;
};

struct LowerBoundCertificate {
  double s = 0.0;
  int k = 0;
  double r_omega = 0.0;
  std::vector<TileRecord> tiles;
  double bound_pipeline = 0.0;    // min over tiles, rescaled to original units
  double bound_closed_form = 0.0; // theta_s k^{-s} r^{-2s}
  bool heuristic = false;         // any estimated constant involved
  struct {
    double morrey = 0.0, a_dir = 0.0, phi22 = 0.0, theta = 0.0;
    std::string morrey_prov, a_dir_prov, phi22_prov;
  } constants_used;
};

struct CertificateOptions {
  bool capacity_via_qp = false;  // direct QP solves instead of the projection chain
  double R_over_r = 2.0;
  capacity::SolveOptions qp;
};

LowerBoundCertificate lower_bound_certificate(const geometry::RasterDomain& dom, double s,
                                              const constants::ConstantsTable& table,
                                              const CertificateOptions& opt = {});

struct VerifyReport {
  LowerBoundCertificate certificate;
  double eig = 0.0;
  double upper = 0.0;
  bool pass = false;
  bool heuristic = false;
  std::string domain_label;
};

/// lower <= eig and lower <= upper (+tol), with eig from the discrete solve
/// and upper from trial Rayleigh quotients. FAIL is data, not an error.
VerifyReport verify_main_theorem(const geometry::RasterDomain& dom, double s,
                                 const constants::ConstantsTable& table,
                                 const CertificateOptions& copt = {},
                                 const spectral::EigOptions& eopt = {}, double tol = 1e-9);

struct SHalfRow {
  double s = 0.0;
  double eps = 0.0;
  int n = 0;
  double upper = 0.0;         // trial-based upper bound for the comb window
  double lambda_window = 0.0; // discrete eigenvalue on the truncated comb
  double ratio = 0.0;         // upper / (2s - 1)
};

struct SHalfResult {
  std::vector<SHalfRow> rows;
  double max_over_min_ratio = 0.0;
  bool window_grown = false;
};

/// Near-1/2 sweep on the punctured comb: trial-based upper bounds with the
/// Step-5 parameters plus eigensolves on the truncated window.
SHalfResult s_half_sweep(int k, const std::vector<double>& s_list, double h = 0.5,
                         bool with_eigensolves = true, const spectral::EigOptions& opt = {});

std::string to_json(const LowerBoundCertificate& cert);
std::string to_json(const VerifyReport& report);

}  // namespace fracspec::pipeline
