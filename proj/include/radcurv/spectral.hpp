#pragma once

#include <string>
#include <vector>

#include "radcurv/manifold.hpp"

namespace radcurv {

// flux-form discretization shared by the eigensolvers and the heat stepper:
// m cells on (0,R) with centers x_i = (i-1/2)h and faces at jh carrying the
// weight W_j = g^{n-1}(jh). W_0 = 0, so the pole face transports no flux and
// the regularity condition u'(0)=0 needs no ghost bookkeeping.
struct RadialGrid {
  double R = 0.0;
  int m = 0;
  double h = 0.0;
  std::vector<double> face_w;  // W_0..W_m
  std::vector<double> cell_w;  // g^{n-1} at the m cell centers
};

RadialGrid radial_grid(const RotSymManifold& M, double R, int m);

// symmetric tridiagonal stiffness of u -> -(g^{n-1}u')'/g^{n-1}; cell_w is
// the matching diagonal mass matrix. off[i] couples cells i and i+1.
struct RadialStiffness {
  std::vector<double> diag;
  std::vector<double> off;
};
RadialStiffness radial_stiffness(const RadialGrid& G, bool dirichlet_outer);

// solve the symmetric positive-definite tridiagonal system (diag, off) x = rhs
std::vector<double> solve_tridiag(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  std::vector<double> rhs);

struct SpectralEstimate {
  double value = 0.0;
  std::string op = "laplacian";  // "laplacian" or "p-laplacian(<flat>)"
  double flat = 2.0;
  double R = 0.0;
  int grid_size = 0;
  std::string method = "finite-difference eigensolve";
  // coarse-vs-fine Richardson estimate of the discretization error in value;
  // refining the grid 2x moves value by at most ~4x this
  double residual = 0.0;
};

// first Dirichlet eigenvalue of the Laplacian on the geodesic ball B(q,R)
SpectralEstimate dirichlet_eigenvalue(const RotSymManifold& M, double R,
                                      int grid_size);

// the eigenvalue together with its (positive, sup-normalized) eigenfunction
struct GroundState {
  SpectralEstimate estimate;
  RadialGrid grid;
  std::vector<double> u;
};
GroundState dirichlet_ground_state(const RotSymManifold& M, double R,
                                   int grid_size);

// first Dirichlet eigenvalue of the flat-Laplacian, flat in (1,10]:
// minimize the discrete quotient int |u'|^flat g^{n-1} / int |u|^flat g^{n-1}
SpectralEstimate p_laplacian_eigenvalue(const RotSymManifold& M, double R,
                                        double flat, int grid_size);

// R0 * 2^k for k = 0..steps (steps <= 12)
std::vector<double> radius_ladder(double R0, int steps);

// eigenvalue ladder plus the spectral upper-bound chain
//   lambda_estimate  <=  middle = (limsup area/vol)^2/4
//                    <=  right  = (c8/(2 sqrt(n-1)))^2 limsup kbar(p,.,0,R)
// with ladder-tail limsup estimates; alpha > 0 additionally evaluates the
// curvature-scale form (c8/2)^2 alpha^2 together with its hypothesis norm
// k(p, -alpha^2) at the top rung.
struct SpectralChain {
  std::vector<double> ladder;
  std::vector<double> eigenvalues;
  double lambda_estimate = 0.0;  // tail extrapolation of the rung values
  double uncertainty = 0.0;      // error estimate for lambda_estimate
  double middle = 0.0;
  double right = 0.0;
  double alpha = -1.0;
  double alpha_right = 0.0;  // (c8/2)^2 alpha^2, 0 unless alpha > 0
  double alpha_norm = 0.0;   // k(p,q,-alpha^2,R_top), finite-hypothesis check
  bool chain_ok = false;
  bool converged = false;  // area/vol tail settled (last 3 within 1e-3 rel)
};
SpectralChain spec_chain(const RotSymManifold& M, double p,
                         const std::vector<double>& ladder,
                         double alpha = -1.0);
// the headline bound (the middle term of the chain)
double spec_upper_bound(const RotSymManifold& M, double p,
                        const std::vector<double>& ladder);

// same chain for the flat-Laplacian:
//   lambda_estimate <= middle = ((1/flat) limsup area/vol)^flat
//                   <= right  = (c8/(flat sqrt(n-1)))^flat (limsup kbar)^{flat/2}
// plus the curvature-scale pair lower = ((n-1) alpha/flat)^flat (ground-state
// comparison floor) and upper = (c8 alpha/flat)^flat.
struct PlapChain {
  std::vector<double> ladder;
  std::vector<double> eigenvalues;
  double lambda_estimate = 0.0;
  double uncertainty = 0.0;
  double middle = 0.0;
  double right = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
  double alpha_norm = 0.0;  // k(p,q,-alpha^2,R_top)
  bool chain_ok = false;
  bool converged = false;
};
PlapChain spec_chain_plap(const RotSymManifold& M, double p, double flat,
                          double alpha, const std::vector<double>& ladder);
double spec_upper_bound_plap(const RotSymManifold& M, double p, double flat,
                             double alpha, const std::vector<double>& ladder);

// quotient of the test profile u(t) = e^{-ct/2} on (0, R_max):
//   int (u')^2 area dt / int u^2 area dt.
// c must clear the exponential growth rate of the sphere area (estimated by
// log-derivative extrapolation over {R/4, R/2, R}); below it the untruncated
// quotient diverges and the call raises not_integrable.
double rayleigh_quotient(const RotSymManifold& M, double c, double R_max);

}  // namespace radcurv
