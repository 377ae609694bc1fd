#include "radcurv/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "radcurv/constants.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

namespace {
constexpr double kPi = 3.14159265358979323846;

double clip_pos(double x) { return x > 0.0 ? x : 0.0; }
double clip_neg(double x) { return x < 0.0 ? -x : 0.0; }
}  // namespace

const char* curv_kind_name(CurvKind kind) {
  switch (kind) {
    case CurvKind::type1_ricci: return "ricci-below";
    case CurvKind::type2_ricci: return "ricci-above";
    case CurvKind::type1_sectional: return "sectional-above";
    case CurvKind::type2_sectional: return "sectional-below";
  }
  return "?";
}

double rho(const RotSymManifold& M, const RadialFunction& lambda, double t) {
  return density(M, lambda, t, CurvKind::type1_ricci);
}
double rho_tilde(const RotSymManifold& M, const RadialFunction& lambda,
                 double t) {
  return density(M, lambda, t, CurvKind::type2_ricci);
}
double mu(const RotSymManifold& M, const RadialFunction& lambda, double t) {
  return density(M, lambda, t, CurvKind::type1_sectional);
}
double mu_tilde(const RotSymManifold& M, const RadialFunction& lambda,
                double t) {
  return density(M, lambda, t, CurvKind::type2_sectional);
}

namespace {
// A manifold measured against its own curvature bound has zero deficiency,
// but grid-backed warps reproduce the bound only to rounding.  Snapping
// sub-epsilon residue to exact zero keeps the adaptive quadrature from
// chasing ulp noise around an exactly-zero integral.
double snap(double d, double a, double b) {
  return std::abs(d) <= 1e-12 * (1.0 + std::abs(a) + std::abs(b)) ? 0.0 : d;
}
}  // namespace

double density(const RotSymManifold& M, const RadialFunction& lambda, double t,
               CurvKind kind) {
  double nm1 = static_cast<double>(M.n - 1);
  if (kind == CurvKind::type1_ricci || kind == CurvKind::type2_ricci) {
    double ric = radial_ricci(M, t);
    double d = snap(ric - nm1 * lambda.value(t), ric, nm1 * lambda.value(t));
    return kind == CurvKind::type1_ricci ? clip_neg(d) : clip_pos(d);
  }
  double sec = radial_sectional(M, t);
  double d = snap(sec - lambda.value(t), sec, lambda.value(t));
  return kind == CurvKind::type1_sectional ? clip_pos(d) : clip_neg(d);
}

CurvatureNorm integral_curvature(const RotSymManifold& M,
                                 const RadialFunction& lambda, double p,
                                 double R, CurvKind kind, bool averaged) {
  if (!(p > 0)) fail(ErrorKind::bad_parameter, "norm exponent p must be > 0");
  if (!(R > 0) || R > M.L * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "norm radius must lie in (0, L]");
  double RR = std::min(R, M.L);
  bool ricci = kind == CurvKind::type1_ricci || kind == CurvKind::type2_ricci;
  double nm1 = static_cast<double>(M.n - 1);
  auto inner = [&](double t) {
    double k = radial_sectional(M, t);
    return ricci ? nm1 * k - nm1 * lambda.value(t) : k - lambda.value(t);
  };
  auto integrand = [&](double t) {
    if (t <= 0.0) return 0.0;
    double d = density(M, lambda, t, kind);
    return std::pow(d, p) * std::pow(M.g.value(t), M.n - 1);
  };
  double integral = sphere_measure(M.n) *
                    integrate_split(integrand, 0.0, RR,
                                    find_kinks(inner, 0.0, RR), 1e-10);
  CurvatureNorm norm;
  norm.kind = kind;
  norm.base = "pole";
  norm.p = p;
  norm.R = R;
  norm.averaged = averaged;
  norm.p_in_range = p > M.n / 2.0;
  double base_val = averaged ? integral / ball_volume(M, RR) : integral;
  norm.value = std::pow(base_val, 1.0 / p);
  return norm;
}

double psi(const RotSymManifold& M, const ModelSpace& ms, double t) {
  double end = std::min(static_cast<double>(M.L), ms.domain_end());
  if (!(t > 0.0) || !(t < end * (1 + 1e-12)))
    fail(ErrorKind::out_of_domain, "psi needs 0 < t < min(L, l)");
  double te = std::max(t, 1e-7);
  double ratio_g = M.g.d1(te) / M.g.value(te);
  double ratio_f = ms.f.d1(te) / ms.f.value(te);
  // both ratios diverge like 1/t at the pole while their difference
  // vanishes; snap sub-epsilon residue of the cancellation to exact zero
  double diff = ratio_g - ratio_f;
  if (std::abs(diff) <= 1e-12 * (1.0 + std::abs(ratio_g) + std::abs(ratio_f)))
    diff = 0.0;
  return clip_pos(static_cast<double>(M.n - 1) * diff);
}

CurvatureNorm tube_integral_curvature_segment(double k_curv, int n, double L_N,
                                              const RadialFunction& lambda,
                                              double p, double R,
                                              CurvKind kind) {
  if (n < 3) fail(ErrorKind::bad_parameter, "segment tubes need n >= 3");
  if (!(p > 0) || !(L_N > 0) || !(R > 0))
    fail(ErrorKind::bad_parameter, "segment tube needs positive p, L_N, R");
  if (k_curv > 0 && !(R < kPi / (2 * std::sqrt(k_curv))))
    fail(ErrorKind::bad_parameter,
         "tube radius must stay below pi/(2 sqrt(k)) in positive curvature");
  double nm1 = static_cast<double>(n - 1);
  bool ricci = kind == CurvKind::type1_ricci || kind == CurvKind::type2_ricci;
  auto dens = [&](double s) {
    double diff = ricci ? nm1 * (k_curv - lambda.value(s))
                        : k_curv - lambda.value(s);
    switch (kind) {
      case CurvKind::type1_ricci: return clip_neg(diff);
      case CurvKind::type2_ricci: return clip_pos(diff);
      case CurvKind::type1_sectional: return clip_pos(diff);
      case CurvKind::type2_sectional: return clip_neg(diff);
    }
    return 0.0;
  };
  double a = std::sqrt(std::abs(k_curv));
  auto fermi = [&](double s) {
    if (k_curv == 0.0) return std::pow(s, n - 2);
    if (k_curv < 0.0)
      return std::pow(std::sinh(a * s) / a, n - 2) * std::cosh(a * s);
    return std::pow(std::sin(a * s) / a, n - 2) * std::cos(a * s);
  };
  auto integrand = [&](double s) {
    if (s <= 0.0) return 0.0;
    return std::pow(dens(s), p) * fermi(s);
  };
  auto inner = [&](double s) { return k_curv - lambda.value(s); };
  double integral = L_N * sphere_measure(n - 1) *
                    integrate_split(integrand, 0.0, R,
                                    find_kinks(inner, 0.0, R), 1e-10);
  CurvatureNorm norm;
  norm.kind = kind;
  norm.base = "segment";
  norm.p = p;
  norm.R = R;
  norm.p_in_range = p > n - 1.0;  // segment-tube results need p > n-1
  norm.value = std::pow(integral, 1.0 / p);
  return norm;
}

CurvatureNorm tube_integral_curvature_sphere(const RotSymManifold& M,
                                             double t0,
                                             const RadialFunction& lambda,
                                             double p, double R,
                                             CurvKind kind) {
  if (!(t0 > 0.0) || !(t0 < M.L))
    fail(ErrorKind::out_of_domain, "sphere base radius must lie in (0, L)");
  if (!(p > 0) || !(R > 0))
    fail(ErrorKind::bad_parameter, "sphere tube needs positive p and R");
  double lo = std::max(0.0, t0 - R);
  double hi = std::min(M.L, t0 + R);
  double nm1 = static_cast<double>(M.n - 1);
  bool ricci = kind == CurvKind::type1_ricci || kind == CurvKind::type2_ricci;
  auto dens = [&](double u) {
    double k = radial_sectional(M, u);
    double lam = lambda.value(std::abs(u - t0));
    double diff = ricci ? nm1 * k - nm1 * lam : k - lam;
    switch (kind) {
      case CurvKind::type1_ricci: return clip_neg(diff);
      case CurvKind::type2_ricci: return clip_pos(diff);
      case CurvKind::type1_sectional: return clip_pos(diff);
      case CurvKind::type2_sectional: return clip_neg(diff);
    }
    return 0.0;
  };
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    return std::pow(dens(u), p) * std::pow(M.g.value(u), M.n - 1);
  };
  auto inner = [&](double u) {
    return radial_sectional(M, u) - lambda.value(std::abs(u - t0));
  };
  std::vector<double> breaks = find_kinks(inner, lo, hi);
  if (t0 > lo && t0 < hi) breaks.push_back(t0);  // |u - t0| kink
  double integral =
      sphere_measure(M.n) * integrate_split(integrand, lo, hi, breaks, 1e-10);
  CurvatureNorm norm;
  norm.kind = kind;
  norm.base = "sphere@" + std::to_string(t0);
  norm.p = p;
  norm.R = R;
  norm.p_in_range = p > M.n / 2.0;
  norm.value = std::pow(integral, 1.0 / p);
  return norm;
}

}  // namespace radcurv
