#include "radcurv/constants.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

double sphere_measure(int n) {
  if (n < 1) fail(ErrorKind::bad_parameter, "sphere_measure needs n >= 1");
  const double half = 0.5 * static_cast<double>(n);
  return 2.0 * std::pow(M_PI, half) / std::tgamma(half);
}

double c1(const ModelSpace& ms, int n, double r) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c1 needs n >= 2");
  if (r < 0.0) fail(ErrorKind::out_of_domain, "c1 radius must be nonnegative");
  if (r == 0.0) return static_cast<double>(n);
  if (r > ms.domain_end() * (1.0 + 1e-12))
    fail(ErrorKind::out_of_domain, "c1 radius exceeds the model domain");

  const double nm1 = static_cast<double>(n - 1);
  Integrand fpow = [&](double s) { return std::pow(ms.f.value(s), nm1); };

  const int npts = 512;
  const double h = r / npts;
  std::vector<double> prefix(npts + 1, 0.0);
  for (int i = 1; i <= npts; ++i)
    prefix[i] = prefix[i - 1] + integrate(fpow, (i - 1) * h, i * h, 1e-11);

  // t f^{n-1}(t) / \int_0^t f^{n-1}; tends to n at the pole
  auto ratio_from = [&](int base, double t) {
    double den = prefix[base];
    if (t > base * h) den += integrate(fpow, base * h, t, 1e-11);
    if (den <= 0.0) return static_cast<double>(n);
    return t * fpow(t) / den;
  };

  double best = static_cast<double>(n);
  int arg = 0;
  for (int i = 1; i <= npts; ++i) {
    const double v = i * h * fpow(i * h) / prefix[i];
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  if (arg > 0) {
    const int base = std::max(0, arg - 1);
    double lo = base * h;
    double hi = std::min(npts, arg + 1) * h;
    for (int it = 0; it < 80; ++it) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (ratio_from(base, m1) < ratio_from(base, m2))
        lo = m1;
      else
        hi = m2;
    }
    best = std::max(best, ratio_from(base, 0.5 * (lo + hi)));
  }
  return best;
}

double c2(int n, double p) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c2 needs n >= 2");
  if (!(p > 0.5 * n)) fail(ErrorKind::bad_parameter, "c2 needs p > n/2");
  return std::pow(1.0 / (n - 1.0) - 1.0 / (2.0 * p - 1.0), -p);
}

double c_main(const ModelSpace& ms, int n, double p, double R) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c_main needs n >= 2");
  if (!(p > 0.5 * n)) fail(ErrorKind::bad_parameter, "c_main needs p > n/2");
  if (!(R > 0.0)) fail(ErrorKind::bad_parameter, "c_main needs R > 0");
  if (R > ms.domain_end() * (1.0 + 1e-12))
    fail(ErrorKind::out_of_domain, "c_main radius exceeds the model domain");

  const double wn = sphere_measure(n);
  const double inv2p = 1.0 / (2.0 * p);
  // the ball volume behaves like w_n s^n / n at the pole, so the integrand is
  // s^{-n/2p} there; integrate that head analytically, the rest adaptively
  const double s0 = std::min(1e-3, R);
  const double head_exp = 1.0 - n * inv2p;  // positive because p > n/2
  const double head =
      std::pow(n / wn, inv2p) * std::pow(s0, head_exp) / head_exp;
  double tail = 0.0;
  if (R > s0) {
    Integrand g = [&](double s) {
      return std::pow(model_volume(ms, n, s), -inv2p);
    };
    tail = integrate(g, s0, R, 1e-10);
  }
  return inv2p * c1(ms, n, R) * c2(n, p) * (head + tail);
}

double c4(int n, double p) {
  if (n <= 2) fail(ErrorKind::bad_parameter, "c4 needs n > 2");
  if (!(p > n - 1.0)) fail(ErrorKind::bad_parameter, "c4 needs p > n-1");
  const double lead = std::pow((2.0 * p - 1.0) * (p - 1.0) / ((n - 2.0) * p), p) /
                      std::pow(2.0 * p - n + 1.0, p - 1.0);
  const double bracket = 2.0 * std::pow((2.0 * p - 1.0) / (p + 1.0 - n), p) + 1.0;
  return lead * bracket;
}

double c5(int n, double p) { return std::pow(2.0, p - 1.0) * c4(n, p); }

double c6(int n, double p) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c6 needs n >= 2");
  if (!(p > 0.5 * n)) fail(ErrorKind::bad_parameter, "c6 needs p > n/2");
  return std::pow(2.0 - 1.0 / p, p) * std::pow((p - 1.0) / (2.0 * p - n), p - 1.0);
}

double c7(int n, double p) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c7 needs n >= 2");
  if (!(p > 0.5 * n) || !(p > 1.0)) fail(ErrorKind::bad_parameter, "c7 needs p > max(n/2, 1)");
  return std::sqrt((2.0 * p - 1.0) / p) *
         std::pow(n - 1.0, (2.0 * p - 1.0) / (2.0 * p)) *
         std::pow((2.0 * p - 2.0) / (2.0 * p - n), (p - 1.0) / (2.0 * p));
}

double c8(int n, double p) {
  if (n < 2) fail(ErrorKind::bad_parameter, "c8 needs n >= 2");
  if (!(p > 0.5 * n) || !(p > 1.0)) fail(ErrorKind::bad_parameter, "c8 needs p > max(n/2, 1)");
  return std::pow(2.0, 1.0 - 1.0 / (2.0 * p)) *
         std::pow(n - 1.0, (2.0 * p - 1.0) / (2.0 * p)) *
         std::pow(p * (p - 1.0) / ((2.0 * p - 1.0) * (2.0 * p - n)),
                  (p - 1.0) / (2.0 * p));
}

double c9(int n, double p, double tau) {
  if (!(tau > 0.0)) fail(ErrorKind::bad_parameter, "c9 needs tau > 0");
  return std::pow(1.0 + 1.0 / tau, 2.0 * p - 1.0) * (2.0 * p - 1.0) /
         (2.0 * p * (n - 1.0)) * c6(n, p);
}

double c10(int n, double p, double lambda_inf, double D) {
  if (!(lambda_inf < 0.0))
    fail(ErrorKind::bad_parameter, "c10 needs a strictly negative lambda_inf");
  if (!(D > 0.0)) fail(ErrorKind::bad_parameter, "c10 needs D > 0");
  const double root = c7(n, p) * std::sqrt(-lambda_inf);
  const double cap = 0.25 / std::expm1(root * D);
  return root * std::min(std::pow(2.0, -1.0 / (2.0 * p - 1.0)), cap);
}

double delta_exponent(int n, double p) {
  if (!(2.0 * p > 1.0)) fail(ErrorKind::bad_parameter, "delta exponent needs p > 1/2");
  return (2.0 * p - n + 1.0) / (2.0 * p - 1.0);
}

double delta_hat_exponent(int n, double p) {
  if (!(2.0 * p > 1.0)) fail(ErrorKind::bad_parameter, "delta exponent needs p > 1/2");
  return (2.0 * p - n) / (2.0 * p - 1.0);
}

double expm1_div(double b, double t) {
  const double x = b * t;
  if (std::abs(b) < 1e-8)
    return t * (1.0 + x * (1.0 / 2.0 + x * (1.0 / 6.0 + x / 24.0)));
  return std::expm1(x) / b;
}

double tube_bound_F(int n, double p, double L_N, double lambda_inf,
                    double k_plus_star, double R, bool beta_consistent) {
  if (n <= 2) fail(ErrorKind::bad_parameter, "tube bound needs n > 2");
  if (!(p > n - 1.0)) fail(ErrorKind::bad_parameter, "tube bound needs p > n-1");
  if (lambda_inf > 0.0)
    fail(ErrorKind::bad_parameter, "tube bound needs lambda_inf <= 0");
  if (L_N < 0.0 || k_plus_star < 0.0 || R < 0.0)
    fail(ErrorKind::bad_parameter, "tube bound needs nonnegative L_N, norm, R");
  if (R == 0.0) return 0.0;

  const double nm2 = static_cast<double>(n) - 2.0;
  const double a = std::pow(L_N * sphere_measure(n - 1), 1.0 / nm2);
  const double c5v = c5(n, p);
  const double bt = c5v * std::pow(-lambda_inf, p);
  const double ct = c5v * std::pow(k_plus_star, p);
  if (bt == 0.0) {
    if (ct == 0.0) return std::pow(a, nm2) * std::pow(R, n - 1.0) / (n - 1.0);
    // flat ambient: the comparison profile (e^{bt}-1)/b with the norm-only rate
    const double b2 = std::pow(ct, 1.0 / (2.0 * p - 1.0));
    Integrand prof = [&](double t) { return std::pow(expm1_div(b2, t), nm2); };
    return std::pow(a + b2, nm2) * integrate(prof, 0.0, R, 1e-10);
  }
  const double dl = delta_exponent(n, p);
  const double E = nm2 / (n - 1.0 - dl);
  const double al =
      std::pow(a, E) + std::pow((2.0 * p - 1.0) / (2.0 * p * bt), E) * ct;
  const double be =
      beta_consistent ? std::pow(a, E) : std::pow(a, nm2 / (n - dl));
  const double ga = std::pow(a, E) + std::pow((2.0 * p - 1.0) / (2.0 * p), E) *
                                         std::pow(bt, (1.0 - dl) / (n - 1.0 - dl));
  return (al * ga + be) / (ga * ga) * std::expm1(ga * R) - be / ga * R;
}

double cone_bound_G(int n, double p, double vol_Shat, double lambda_inf,
                    double k_minus, double R, bool beta_consistent) {
  if (n < 2) fail(ErrorKind::bad_parameter, "cone bound needs n >= 2");
  if (!(p > 0.5 * n)) fail(ErrorKind::bad_parameter, "cone bound needs p > n/2");
  if (lambda_inf > 0.0)
    fail(ErrorKind::bad_parameter, "cone bound needs lambda_inf <= 0");
  if (vol_Shat < 0.0 || k_minus < 0.0 || R < 0.0)
    fail(ErrorKind::bad_parameter, "cone bound needs nonnegative measure, norm, R");
  if (R == 0.0) return 0.0;

  const double nm1 = static_cast<double>(n) - 1.0;
  const double a1 = std::pow(vol_Shat, 1.0 / nm1);
  const double split = std::pow(2.0, p - 1.0) * c6(n, p);
  const double bh = split * std::pow(-lambda_inf, p);
  const double ch = split * std::pow(k_minus, p);
  if (bh == 0.0) {
    if (ch == 0.0) return vol_Shat * std::pow(R, n) / n;
    const double b2 = std::pow(ch, 1.0 / (2.0 * p - 1.0));
    Integrand prof = [&](double t) { return std::pow(expm1_div(b2, t), nm1); };
    return std::pow(a1 + b2, nm1) * integrate(prof, 0.0, R, 1e-10);
  }
  const double dh = delta_hat_exponent(n, p);
  const double E = nm1 / (n - dh);
  const double al =
      std::pow(a1, E) + std::pow((2.0 * p - 1.0) / (2.0 * p * bh), E) * ch;
  const double be = beta_consistent
                        ? std::pow(a1, E)
                        : std::pow(a1, nm1 / (n - delta_exponent(n, p)));
  const double ga = std::pow(a1, E) + std::pow((2.0 * p - 1.0) / (2.0 * p), E) *
                                          std::pow(bh, (1.0 - dh) / (n - dh));
  return (al * ga + be) / (ga * ga) * std::expm1(ga * R) - be / ga * R;
}

DividerConstants c13_c14(const ModelSpace& ms, int n, double p, double K,
                         double R, double t, double alpha) {
  if (n < 2) fail(ErrorKind::bad_parameter, "divider constants need n >= 2");
  if (!(p > 0.5 * n)) fail(ErrorKind::bad_parameter, "divider constants need p > n/2");
  if (K < 0.0) fail(ErrorKind::bad_parameter, "curvature budget must be nonnegative");
  if (!(R > 0.0) || R > ms.domain_end() * (1.0 + 1e-12))
    fail(ErrorKind::out_of_domain, "divider radius outside the model domain");
  if (!(t > 0.0 && t < 0.5 * R))
    fail(ErrorKind::bad_parameter, "divider parameter t must lie in (0, R/2)");
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(ErrorKind::bad_parameter, "alpha must lie in (0,1)");

  const double vol_R = model_volume(ms, n, R);
  const double vol_half = model_volume(ms, n, 0.5 * R);
  const double vol_t = model_volume(ms, n, t);

  DividerConstants out;
  out.t = t;
  out.alpha1 = (vol_R - vol_half) / (vol_half - vol_t);
  const double rootK = std::sqrt(K);
  out.alpha2 = 2.0 * std::pow(c2(n, p), 1.0 / (2.0 * p)) *
               std::pow(1.0 + c_main(ms, n, p, R) * rootK, 2.0 * p - 1.0) *
               std::pow(vol_R, 1.0 - 1.0 / (2.0 * p)) * rootK * out.alpha1;
  const double pref = std::pow(ms.f.value(t), n - 1.0) / (vol_R - vol_t);
  out.c13 = pref * (1.0 - alpha * (1.0 + out.alpha1));
  out.c14 = pref * out.alpha2 * R;
  if (out.alpha1 > 0.0) out.c14 += out.alpha2 / (2.0 * out.alpha1);
  return out;
}

IsoConstants iso_euclidean(int n) {
  if (n < 2) fail(ErrorKind::bad_parameter, "iso constants need n >= 2");
  IsoConstants out;
  out.C_I = std::pow(static_cast<double>(n), (n - 1.0) / n) *
            std::pow(sphere_measure(n), 1.0 / n);
  if (n >= 3) {
    const double ratio = (n - 1.0) / (n - 2.0);
    out.C_S = 4.0 * ratio * ratio / (out.C_I * out.C_I);
  }
  return out;
}

double croke_iso_constant(int n) {
  if (n < 2) fail(ErrorKind::bad_parameter, "croke constant needs n >= 2");
  return sphere_measure(n) / std::pow(sphere_measure(n + 1), (n - 1.0) / n);
}

}  // namespace radcurv
