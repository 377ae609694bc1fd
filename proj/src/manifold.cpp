#include "radcurv/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radcurv/constants.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_radius(const RotSymManifold& M, double r, const char* what) {
  if (!(r >= 0.0) || r > M.L * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, std::string(what) + "=" + std::to_string(r) +
                                       " outside [0, L=" + std::to_string(M.L) +
                                       "]");
}
}  // namespace

RotSymManifold make_manifold(int n, RadialFunction g, double L, bool closed) {
  if (n < 2) fail(ErrorKind::bad_parameter, "manifold dimension must be >= 2");
  if (!(L > 0)) fail(ErrorKind::bad_parameter, "cut parameter L must be > 0");
  if (g.bounded() && L > g.domain_end() * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::bad_parameter, "cut parameter exceeds warping domain");
  if (std::abs(g.value(0.0)) > 1e-9)
    fail(ErrorKind::bad_parameter, "warping must vanish at the pole");
  if (std::abs(g.d1(0.0) - 1.0) > 1e-9)
    fail(ErrorKind::bad_parameter, "warping must have unit slope at the pole");
  for (int i = 1; i < 512; ++i) {
    double t = L * i / 512.0;
    if (!(g.value(t) > 0.0))
      fail(ErrorKind::bad_parameter,
           "warping not positive inside (0,L) at t=" + std::to_string(t));
  }
  if (closed && std::abs(g.value(L)) > 1e-9)
    fail(ErrorKind::bad_parameter, "closed manifold needs g(L)=0");
  RotSymManifold M;
  M.n = n;
  M.g = std::move(g);
  M.L = L;
  M.closed = closed;
  return M;
}

double warp_sectional(const RadialFunction& g, double t) {
  if (!(t > 0.0))
    fail(ErrorKind::out_of_domain, "radial curvature needs t > 0");
  double te = std::max(t, 1e-7);
  double v = g.value(te);
  double d2 = g.d2(te);
  if (std::abs(v) < 1e-8) return -d2 / te;  // pole limit via odd extension
  return -d2 / v;
}

double radial_sectional(const RotSymManifold& M, double t) {
  if (!(t < M.L * (1 + 1e-12)))
    fail(ErrorKind::out_of_domain, "radial curvature needs t < L");
  return warp_sectional(M.g, t);
}

double radial_ricci(const RotSymManifold& M, double t) {
  return static_cast<double>(M.n - 1) * radial_sectional(M, t);
}

double ball_volume(const RotSymManifold& M, double r) {
  check_radius(M, r, "r");
  if (r == 0.0) return 0.0;
  double rr = std::min(r, M.L);
  const RadialFunction& g = M.g;
  int n = M.n;
  return sphere_measure(n) *
         integrate(
             [&g, n](double t) {
               return t <= 0.0 ? 0.0 : std::pow(g.value(t), n - 1);
             },
             0.0, rr, 1e-11);
}

double sphere_area(const RotSymManifold& M, double r) {
  check_radius(M, r, "r");
  if (r == 0.0) return 0.0;
  return sphere_measure(M.n) * std::pow(M.g.value(std::min(r, M.L)), M.n - 1);
}

double annulus_volume(const RotSymManifold& M, double r1, double r2) {
  check_radius(M, r1, "r1");
  check_radius(M, r2, "r2");
  if (!(r1 <= r2)) fail(ErrorKind::bad_parameter, "annulus needs r1 <= r2");
  return ball_volume(M, r2) - ball_volume(M, r1);
}

double sphere_mean_curvature(const RotSymManifold& M, double t0) {
  if (!(t0 > 0.0) || !(t0 < M.L))
    fail(ErrorKind::out_of_domain, "sphere radius must lie in (0, L)");
  return M.g.d1(t0) / M.g.value(t0);
}

double spaceform_tube_volume(double k, int n, double L_N, double R) {
  if (n < 3) fail(ErrorKind::bad_parameter, "tube volume needs n >= 3");
  if (!(L_N > 0)) fail(ErrorKind::bad_parameter, "segment length must be > 0");
  if (!(R >= 0)) fail(ErrorKind::bad_parameter, "tube radius must be >= 0");
  if (R == 0.0) return 0.0;
  double wn1 = sphere_measure(n - 1);
  if (k == 0.0) return L_N * wn1 * std::pow(R, n - 1) / (n - 1);
  double a = std::sqrt(std::abs(k));
  if (k > 0.0) {
    if (!(R < kPi / (2 * a)))
      fail(ErrorKind::bad_parameter,
           "tube radius must stay below pi/(2 sqrt(k)) in positive curvature");
    return L_N * wn1 * std::pow(std::sin(a * R) / a, n - 1) / (n - 1);
  }
  return L_N * wn1 * std::pow(std::sinh(a * R) / a, n - 1) / (n - 1);
}

RadialFunction self_bound_function(const RotSymManifold& M) {
  RadialFunction g = M.g;
  double end = M.L;
  return RadialFunction::from_callables(
      "self-bound", [g](double t) { return warp_sectional(g, std::max(t, 1e-7)); },
      [g](double t) {
        double te = std::max(t, 1e-7);
        double h = 1e-5;
        double lo = std::max(te - h, 1e-7), hi = te + h;
        return (warp_sectional(g, hi) - warp_sectional(g, lo)) / (hi - lo);
      },
      [g](double t) {
        double te = std::max(t, 1e-7);
        double h = 1e-4;
        double lo = std::max(te - h, 1e-7), hi = te + h;
        double mid = (lo + hi) / 2;
        return (warp_sectional(g, hi) - 2 * warp_sectional(g, mid) +
                warp_sectional(g, lo)) /
               ((hi - lo) / 2 * ((hi - lo) / 2));
      },
      end);
}

}  // namespace radcurv
