#pragma once

#include "radcurv/expr.hpp"

namespace radcurv {

// rotationally symmetric test manifold M = [0,L) x_g S^{n-1}; for the pole q
// the cut parameter L plays the role of inj(q) = l(q). closed=true models the
// double (g(L)=0), e.g. the round sphere.
struct RotSymManifold {
  int n = 0;
  RadialFunction g;
  double L = 0.0;
  bool closed = false;
};

// validates g(0)=0, |g'(0)-1|<=1e-9, g>0 on a sample of (0,L), and g(L)~0
// when closed
RotSymManifold make_manifold(int n, RadialFunction g, double L,
                             bool closed = false);

// -g''/g with the pole limit: evaluation is clamped to t>=1e-7 and, where
// |g|<1e-8, the quotient is taken against t (odd extension at the pole).
// Shared by the manifold accessors and self-comparison bound functions so
// the two sides of an exact-match test run the identical float sequence.
double warp_sectional(const RadialFunction& g, double t);

double radial_ricci(const RotSymManifold& M, double t);      // (n-1)*K_rad
double radial_sectional(const RotSymManifold& M, double t);  // K_rad

double ball_volume(const RotSymManifold& M, double r);
double sphere_area(const RotSymManifold& M, double r);
double annulus_volume(const RotSymManifold& M, double r1, double r2);

// mean curvature of the geodesic sphere \partial B(q,t0)
double sphere_mean_curvature(const RotSymManifold& M, double t0);

// exact Fermi-coordinate volume of the radius-R tube around a geodesic
// segment of length L_N in the space form of curvature k (n>=3)
double spaceform_tube_volume(double k, int n, double L_N, double R);

// the manifold's bound function lambda(t) := K_rad(t), i.e. the choice for
// which every radial curvature deficiency vanishes identically (equality case)
RadialFunction self_bound_function(const RotSymManifold& M);

}  // namespace radcurv
