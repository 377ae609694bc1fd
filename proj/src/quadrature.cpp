#include "radcurv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radcurv/errors.hpp"

namespace radcurv {

namespace {

double eval_checked(const Integrand& f, double x) {
  double v = f(x);
  if (!std::isfinite(v))
    fail(ErrorKind::quadrature_failure,
         "non-finite integrand value at x=" + std::to_string(x));
  return v;
}

struct Adaptive {
  const Integrand& f;
  // Panels narrower than this fraction of the piece hold no honest
  // resolution (kink locations are themselves only known to ~1e-10), so
  // their refined estimate is accepted as is.  Without the floor, a
  // micro-sliver left over from kink bisection pins the error/tolerance
  // ratio and the subdivision runs to machine width.
  double wmin = 0.0;
  // Hard cap on function evaluations.  Smooth-piece integrands converge in
  // well under 1e5 evals; only rounding-noise integrands (whose true value
  // is below the noise floor anyway) ever get near it, and for those the
  // refined estimate is accepted rather than chased forever.
  mutable long budget = 4000000;

  double eval(double x) const {
    --budget;
    return eval_checked(f, x);
  }

  double recurse(double a, double fa, double m, double fm, double b, double fb,
                 double whole, double eps, int depth) const {
    double lm = a + (m - a) / 2;
    double rm = m + (b - m) / 2;
    double flm = eval(lm);
    double frm = eval(rm);
    double left = (m - a) / 6 * (fa + 4 * flm + fm);
    double right = (b - m) / 6 * (fm + 4 * frm + fb);
    double delta = left + right - whole;
    // accept on tolerance, width collapse, or exhausted budget
    if (std::abs(delta) <= 15 * eps || b - a <= wmin || lm <= a || rm >= b ||
        budget <= 0)
      return left + right + delta / 15;
    if (depth <= 0)
      fail(ErrorKind::quadrature_failure,
           "adaptive subdivision depth exhausted near x=" + std::to_string(m));
    return recurse(a, fa, lm, flm, m, fm, left, eps / 2, depth - 1) +
           recurse(m, fm, rm, frm, b, fb, right, eps / 2, depth - 1);
  }
};

double integrate_piece(const Integrand& f, double a, double b, double rel_tol,
                       double abs_tol) {
  if (a == b) return 0.0;
  // coarse magnitude estimate from 16 Simpson panels; sum of |panel| guards
  // against cancellation hiding the scale
  int panels = 16;
  double hp = (b - a) / panels;
  double scale = 0.0, whole16 = 0.0;
  double x0 = a, f0 = eval_checked(f, a);
  for (int i = 0; i < panels; ++i) {
    double x1 = (i == panels - 1) ? b : a + (i + 1) * hp;
    double xm = x0 + (x1 - x0) / 2;
    double fmv = eval_checked(f, xm);
    double f1 = eval_checked(f, x1);
    double s = (x1 - x0) / 6 * (f0 + 4 * fmv + f1);
    scale += std::abs(s);
    whole16 += s;
    x0 = x1;
    f0 = f1;
  }
  double eps = std::max(abs_tol, rel_tol * scale);
  if (eps <= 0.0) eps = 1e-300;
  double fa = eval_checked(f, a), fb = eval_checked(f, b);
  double m = a + (b - a) / 2;
  double fm = eval_checked(f, m);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  (void)whole16;
  return Adaptive{f, (b - a) * 1e-12}.recurse(a, fa, m, fm, b, fb, whole, eps,
                                              60);
}

}  // namespace

double integrate(const Integrand& f, double a, double b, double rel_tol,
                 double abs_tol) {
  if (!(b >= a)) fail(ErrorKind::bad_parameter, "integration bounds reversed");
  if (!(rel_tol > 0) && !(abs_tol > 0))
    fail(ErrorKind::bad_parameter, "integration tolerance must be positive");
  return integrate_piece(f, a, b, rel_tol, abs_tol);
}

double integrate_split(const Integrand& f, double a, double b,
                       std::vector<double> breaks, double rel_tol,
                       double abs_tol) {
  if (!(b >= a)) fail(ErrorKind::bad_parameter, "integration bounds reversed");
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> pts;
  pts.push_back(a);
  for (double x : breaks)
    if (x > pts.back() + 1e-14 * (1 + std::abs(pts.back())) && x < b)
      pts.push_back(x);
  pts.push_back(b);
  double total = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate_piece(f, pts[i], pts[i + 1], rel_tol, abs_tol);
  return total;
}

std::vector<double> find_kinks(const Integrand& inner, double a, double b,
                               int n_scan) {
  std::vector<double> out;
  if (!(b > a) || n_scan < 2) return out;
  double h = (b - a) / n_scan;
  double x0 = a + h * 1e-6;  // stay off the endpoints
  double v0 = inner(x0);
  for (int i = 1; i <= n_scan; ++i) {
    double x1 = (i == n_scan) ? b - h * 1e-6 : a + i * h;
    double v1 = inner(x1);
    if (std::isfinite(v0) && std::isfinite(v1) &&
        ((v0 < 0 && v1 > 0) || (v0 > 0 && v1 < 0))) {
      double lo = x0, hi = x1, vlo = v0;
      while (hi - lo > 1e-10) {
        double mid = lo + (hi - lo) / 2;
        double vm = inner(mid);
        if (vm == 0) {
          lo = hi = mid;
          break;
        }
        if ((vlo < 0) == (vm < 0)) {
          lo = mid;
          vlo = vm;
        } else {
          hi = mid;
        }
      }
      out.push_back(lo + (hi - lo) / 2);
    }
    x0 = x1;
    v0 = v1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace radcurv
