#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "radcurv/curvature.hpp"
#include "radcurv/manifold.hpp"
#include "radcurv/model.hpp"

namespace radcurv {

enum class TheoremId {
  volume_ratio,             // ratio growth controlled by the deficiency norm
  volume_ratio_derivative,  // its differential form, checked by finite diffs
  bishop_gromov,            // monotone ratio when the deficiency vanishes
  doubling,                 // lower volume bound from the averaged norm
  local_comparison,         // two-radii volume ratio under scaled smallness
  tube_spaceform,           // tube volume bound, vanishing reference bound
  tube_general,             // tube volume bound with negative reference floor
  cone,                     // volume bound for radial cones
  hypersurface_tube,        // tube around a geodesic sphere
  asymptotics,              // large-radius volume/area quotients
  iso_local,                // local isoperimetric constant lower bound
  iso_ratio,                // global area/volume ratio on closed manifolds
  shortest_geodesic,        // length floor for closed geodesics
  divider,                  // area floor for radial dividing hypersurfaces
  heat_kernel,              // pointwise heat kernel comparison
};

const char* theorem_id_name(TheoremId id);
TheoremId theorem_id_from_name(const std::string& name);  // throws config_error

enum class Satisfied { yes, no, indeterminate };
const char* satisfied_name(Satisfied s);

struct HypothesisCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// %.17g: round-trips doubles; used wherever a number becomes report text
std::string format_double(double v);

struct VerificationReport {
  TheoremId theorem_id = TheoremId::volume_ratio;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<HypothesisCheck> hypothesis_checks;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;      // rhs - lhs; the checked sense is always lhs <= rhs
  double tol_slack = 0.0;  // tol_scale * (1 + |rhs|)
  Satisfied satisfied = Satisfied::indeterminate;
  std::string grid_label;
  std::vector<double> grid;
  std::vector<std::string> notes;

  void add_input(const std::string& key, double v);
  void add_input(const std::string& key, const std::string& v);
  void add_check(const std::string& name, bool passed, std::string detail = "");
  bool hypotheses_ok() const;
  // fills slack/tol_slack/satisfied; failed hypotheses force indeterminate,
  // never a violation
  void finalize(double tol_scale = 1e-9);
};

// ratio difference vs the deficiency norm, plus the product-form corollary
VerificationReport verify_thm2_1(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double r, double R,
                                 double tol = 1e-9);

// requires the deficiency to vanish; throws hypothesis_unmet otherwise
VerificationReport verify_bishop_gromov(const RotSymManifold& M,
                                        const ModelSpace& ms,
                                        const std::vector<double>& r_grid);

VerificationReport verify_cor3_6(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double D, double alpha);

VerificationReport verify_cor3_8(const RotSymManifold& M, double p,
                                 double alpha, double r1, double r2, double R);

VerificationReport verify_thm3_8(double k_curv, int n, double p, double L_N,
                                 double R);

VerificationReport verify_thm3_9(double k_curv, int n, double p, double L_N,
                                 double R, const RadialFunction& lambda,
                                 bool beta_consistent = true);

VerificationReport verify_thm3_10(const RotSymManifold& M, double p, double R,
                                  double vol_Shat,
                                  const RadialFunction& lambda,
                                  bool beta_consistent = true);

VerificationReport verify_thm3_13(const RotSymManifold& M, double p,
                                  const RadialFunction& lambda, double t0,
                                  double R);

// large-radius decay of vol^{1/2p}/R and area/vol^{1-1/2p} along the ladder,
// and of the s-weighted area ratio against its norm-driven bound (s < 1/2p;
// pass s < 0 to skip the second claim)
VerificationReport verify_thm3_15(const RotSymManifold& M, double p,
                                  const std::vector<double>& R_ladder,
                                  double s);

VerificationReport verify_thm4_1(const RotSymManifold& M, double p, double tau,
                                 double r1);

VerificationReport verify_thm4_4(const RotSymManifold& M, double p,
                                 const RadialFunction& lambda, double D);

// inf over pole-centered caps with vol <= vol(M)/2 of
// area / vol^{1-1/2p} / vol(M)^{1/2p}
double isoperimetric_quantity_radial(const RotSymManifold& M, double p);

struct ShortestGeodesicBound {
  double delta = 0.0;
  double residual = 0.0;     // |bound(delta) - w|
  bool trivial_zero = false; // bound already >= w as the length -> 0
};

ShortestGeodesicBound shortest_geodesic_bound(int n, double p,
                                              const RadialFunction& lambda,
                                              double w, double D,
                                              double epsilon);

VerificationReport verify_thm5_3(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double K, double R, double alpha,
                                 double s_divider);

// finite-difference check of the ratio-derivative inequality at r_pts
VerificationReport lemma2_2_report(const RotSymManifold& M,
                                   const ModelSpace& ms, double p,
                                   const std::vector<double>& r_pts);

struct FuzzParams {
  double amp = 0.05;   // warp-coefficient amplitude
  double bmax = 0.05;  // bound-function coefficient cap
  double T = 3.0;      // model solver horizon
};

// deterministic seeded sweep; every report either satisfied or indeterminate,
// a violation is an implementation bug by construction
std::vector<VerificationReport> fuzz_suite(std::uint64_t seed, int n_cases,
                                           const FuzzParams& params = {});

}  // namespace radcurv
