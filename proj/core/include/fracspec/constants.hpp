#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracspec/gagliardo.hpp"

namespace fracspec::constants {

enum class Provenance { kClosedForm, kQuadrature, kEstimated, kConfigured };

std::string to_string(Provenance p);

struct Entry {
  double value = 0.0;
  Provenance provenance = Provenance::kQuadrature;
  int corpus_size = 0;  // for estimated entries
};

/// Per-s and global constants with provenance. Estimated entries are corpus
/// envelopes (max for A_dir / M_pw, min for phi22) with a 1.1 safety factor.
struct ConstantsTable {
  struct PerS {
    double s = 0.0;
    Entry fourier_a;   // A_s
    Entry morrey;      // m_s (s > 1/2 only)
    Entry alpha;       // alpha_s
    Entry zeta_sq;     // [zeta_s]^2_{W^{s,2}(R)} (s > 1/2 only)
    Entry theta;       // theta_s (needs morrey + globals)
  };
  std::vector<PerS> rows;
  Entry a_dir;   // directional-to-full ratio envelope
  Entry m_pw;    // Poincare-Wirtinger envelope
  Entry phi22;   // Maz'ya-Poincare constant for N=2, R/r=2

  const PerS* find(double s) const;
};

/// A_s = ( \int_R |e^{it}-1|^2 |t|^{-1-2s} dt )^{-1}, quadrature with
/// closed-form power tails; relative tolerance ~1e-8.
double fourier_A(double s);

/// m_s = (3-2s)(2s-1) / (2 * 4^{2-s} * A_s), for 1/2 < s < 1.
double morrey_m(double s);

/// alpha_s = \int_R (1+t^2)^{-(2+2s)/2} dt, tolerance ~1e-10 (s in [0,1]).
double alpha(double s);

struct ZetaDecomposition {
  double total = 0.0;
  double i1 = 0.0;  // interior double integral over (-1,1)^2
  double i2 = 0.0;  // right exterior strip
  double i3 = 0.0;  // left exterior strip
};

/// [zeta_s]^2_{W^{s,2}(R)} via the three-piece decomposition.
ZetaDecomposition zeta_seminorm(double s, double tol);

/// theta_s = (50(2-sqrt2))^{(1-2s)/2} / 2^{1+2s} * m_s * phi22 / (200 * A_dir).
double theta(double s, const ConstantsTable& table);

/// Deterministic 12-member corpus on the given raster: tensor bumps,
/// off-center bumps, oscillatory bumps (3 frequencies), funnel products.
/// `variant` perturbs parameters (corpus-doubling studies).
std::vector<gagliardo::GridFunction> default_corpus(const geometry::RasterDomain& dom,
                                                    int variant = 0);

double estimate_A_dir(const std::vector<gagliardo::GridFunction>& corpus,
                      const std::vector<double>& s_grid);

double estimate_M_pw(const std::vector<gagliardo::GridFunction>& corpus,
                     const std::vector<double>& s_grid,
                     const geometry::RasterDomain& disk_raster, double disk_radius);

struct MazyaScenario {
  geometry::RasterDomain box;          // ambient grid covering B_R
  std::vector<int> q_nodes;            // nodes of the square Q_r
  std::vector<int> sigma_nodes;        // Dirichlet region inside Q_r
  std::vector<int> ball_nodes;         // nodes of B_R (capacity domain)
  gagliardo::GridFunction u;           // vanishes near sigma
  double r = 0.0;                      // half-side of Q_r
};

/// Built-in scenario family for estimating phi22 (vertical-segment Dirichlet
/// regions with bumps supported away from them).
std::vector<MazyaScenario> default_mazya_scenarios(double R_over_r = 2.0, int variant = 0);

double estimate_phi22(const std::vector<MazyaScenario>& scenarios,
                      const std::vector<double>& s_grid);

struct TableOptions {
  std::vector<double> s_values{0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95};
  std::vector<double> estimator_s_grid{0.6, 0.75, 0.9};
  double zeta_tol = 1e-7;
  std::optional<double> a_dir_override;   // config key A_dir=
  std::optional<double> m_pw_override;    // config key M_pw=
  std::optional<double> phi22_override;   // config key phi22=
};

ConstantsTable build_table(const TableOptions& opt = {});

void write_constants_csv(std::ostream& os, const ConstantsTable& table);

/// key=value configuration lines (ignores blank lines and '#' comments).
std::map<std::string, std::string> parse_config(std::istream& is);

}  // namespace fracspec::constants
