#pragma once

#include <string>

#include "radcurv/manifold.hpp"
#include "radcurv/model.hpp"

namespace radcurv {

// the four pointwise radial curvature deficiencies, L^p-integrated:
//   type1_ricci      |min{0, Ric - (n-1)lambda}|   (how far Ricci drops below)
//   type2_ricci      |max{0, Ric - (n-1)lambda}|   (how far Ricci rises above)
//   type1_sectional  |max{0, K - lambda}|          (how far K rises above)
//   type2_sectional  |min{0, K - lambda}|          (how far K drops below)
enum class CurvKind {
  type1_ricci,
  type2_ricci,
  type1_sectional,
  type2_sectional
};

const char* curv_kind_name(CurvKind kind);

struct CurvatureNorm {
  CurvKind kind = CurvKind::type1_ricci;
  std::string base;  // "pole", "segment", "sphere@<t0>"
  double p = 0.0;
  double R = 0.0;
  bool averaged = false;
  bool p_in_range = true;  // p > n/2 (validated, flagged rather than fatal)
  double value = 0.0;
};

// pointwise deficiencies at radius t (0 < t < L)
double rho(const RotSymManifold& M, const RadialFunction& lambda, double t);
double rho_tilde(const RotSymManifold& M, const RadialFunction& lambda,
                 double t);
double mu(const RotSymManifold& M, const RadialFunction& lambda, double t);
double mu_tilde(const RotSymManifold& M, const RadialFunction& lambda,
                double t);
double density(const RotSymManifold& M, const RadialFunction& lambda, double t,
               CurvKind kind);

// ( w_n \int_0^R dens^p g^{n-1} dt )^{1/p}, divided by vol(B(q,R))^{1/p}
// when averaged
CurvatureNorm integral_curvature(const RotSymManifold& M,
                                 const RadialFunction& lambda, double p,
                                 double R, CurvKind kind,
                                 bool averaged = false);

// comparison density max{0, (n-1)(g'/g - f'/f)}
double psi(const RotSymManifold& M, const ModelSpace& ms, double t);

// norm over the radius-R tube around a geodesic segment of length L_N inside
// the space form of curvature k_curv (n >= 3); lambda is a function of the
// distance to the segment
CurvatureNorm tube_integral_curvature_segment(double k_curv, int n, double L_N,
                                              const RadialFunction& lambda,
                                              double p, double R,
                                              CurvKind kind);

// norm over the radius-R tube around the geodesic sphere \partial B(q,t0) in
// M, both sides clipped to (0,L); lambda is a function of the distance to
// the sphere
CurvatureNorm tube_integral_curvature_sphere(const RotSymManifold& M,
                                             double t0,
                                             const RadialFunction& lambda,
                                             double p, double R,
                                             CurvKind kind);

}  // namespace radcurv
