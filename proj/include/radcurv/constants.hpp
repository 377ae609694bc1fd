#pragma once

#include "radcurv/model.hpp"

namespace radcurv {

// w_n = 2 pi^{n/2} / Gamma(n/2), the measure of the unit (n-1)-sphere
double sphere_measure(int n);

// max_{t in (0,r]} t f^{n-1}(t) / \int_0^t f^{n-1}; equals n for lambda=0
double c1(const ModelSpace& ms, int n, double r);

// (1/(n-1) - 1/(2p-1))^{-p}, p > n/2
double c2(int n, double p);

// (1/2p) c1(n,R) c2(n,p) \int_0^R vol(B(q^-,s))^{-1/2p} ds, the volume-ratio
// comparison constant; nondecreasing in R
double c_main(const ModelSpace& ms, int n, double p, double R);

double c4(int n, double p);                // segment tubes, p > n-1, n > 2
double c5(int n, double p);                // 2^{p-1} c4
double c6(int n, double p);                // cones, p > n/2
double c7(int n, double p);                // hypersurface tubes, p > n/2
double c8(int n, double p);                // asymptotic ratios, p > n/2
double c9(int n, double p, double tau);    // local isoperimetric hypothesis
double c10(int n, double p, double lambda_inf, double D);  // lambda_inf < 0

double delta_exponent(int n, double p);      // (2p-n+1)/(2p-1)
double delta_hat_exponent(int n, double p);  // (2p-n)/(2p-1)

// (e^{bt}-1)/b, Taylor-expanded when |b| < 1e-8
double expm1_div(double b, double t);

// volume bound for tubes around geodesic segments (length L_N) under an
// integral excess-curvature budget; exact closed forms in the degenerate
// branches, the exponential comparison profile otherwise. beta_consistent
// selects between the two exponent readings of the linear coefficient (see
// cone_bound_G); both are exposed, never silently merged.
double tube_bound_F(int n, double p, double L_N, double lambda_inf,
                    double k_plus_star, double R, bool beta_consistent = true);

// volume bound for geodesic cones over a direction set of measure vol_Shat
double cone_bound_G(int n, double p, double vol_Shat, double lambda_inf,
                    double k_minus, double R, bool beta_consistent = true);

// divider constants: the area lower bound vol(Gamma) >= c13 min(vol D_i) - c14
// for a fixed interior parameter t in (0, R/2); alpha1/alpha2 are the
// intermediate ratios, K bounds the curvature norm
struct DividerConstants {
  double c13 = 0.0;
  double c14 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double t = 0.0;
};
DividerConstants c13_c14(const ModelSpace& ms, int n, double p, double K,
                         double R, double t, double alpha);

// isoperimetric / Sobolev constants of Euclidean space. C_I is the
// ball-extremal value inf vol(dB)/vol(B)^{(n-1)/n} = n^{(n-1)/n} w_n^{1/n};
// C_S = 4((n-1)/(n-2))^2 C_I^{-2} needs n >= 3.
struct IsoConstants {
  double C_I = 0.0;
  double C_S = 0.0;  // only set for n >= 3
};
IsoConstants iso_euclidean(int n);

// the chord-counting constant w_n / w_{n+1}^{(n-1)/n} appearing in the local
// isoperimetric lower bound
double croke_iso_constant(int n);

}  // namespace radcurv
