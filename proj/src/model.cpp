#include "radcurv/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 8-point Gauss-Legendre on [-1,1]; exact for polynomials up to degree 15,
// so per-interval integrals of (cubic Hermite)^{n-1} are exact for n <= 6
constexpr double kGlx[8] = {-0.9602898564975363, -0.7966664774136267,
                            -0.5255324099163290, -0.1834346424956498,
                            0.1834346424956498,  0.5255324099163290,
                            0.7966664774136267,  0.9602898564975363};
constexpr double kGlw[8] = {0.1012285362903763, 0.2223810344533745,
                            0.3137066458778873, 0.3626837833783620,
                            0.3626837833783620, 0.3137066458778873,
                            0.2223810344533745, 0.1012285362903763};

double hermite_value(double f0, double fp0, double f1, double fp1, double h,
                     double s) {
  double s2 = s * s, s3 = s2 * s;
  return f0 * (2 * s3 - 3 * s2 + 1) + h * fp0 * (s3 - 2 * s2 + s) +
         f1 * (-2 * s3 + 3 * s2) + h * fp1 * (s3 - s2);
}

double hermite_d1(double f0, double fp0, double f1, double fp1, double h,
                  double s) {
  double s2 = s * s;
  return (f0 * (6 * s2 - 6 * s) + h * fp0 * (3 * s2 - 4 * s + 1) +
          f1 * (-6 * s2 + 6 * s) + h * fp1 * (3 * s2 - 2 * s)) /
         h;
}

double powi(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

double sphere_measure_local(int n) {
  // w_n = 2 pi^{n/2} / Gamma(n/2)
  return 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
}

}  // namespace

WarpSolution::WarpSolution(RadialFunction lambda, double h,
                           std::vector<double> f, std::vector<double> fp,
                           double max_scaled_residual)
    : lambda_(std::move(lambda)),
      h_(h),
      n_steps_(f.size() - 1),
      f_(std::move(f)),
      fp_(std::move(fp)),
      max_res_(max_scaled_residual) {}

void WarpSolution::locate(double t, size_t* idx, double* s) const {
  double T = horizon();
  if (!(t >= 0.0) || t > T * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain,
         "t=" + std::to_string(t) + " outside solved range [0," +
             std::to_string(T) + "]");
  double clamped = std::min(std::max(t, 0.0), T);
  size_t i = std::min(static_cast<size_t>(clamped / h_), n_steps_ - 1);
  *idx = i;
  *s = (clamped - static_cast<double>(i) * h_) / h_;
}

double WarpSolution::value(double t) const {
  size_t i;
  double s;
  locate(t, &i, &s);
  return hermite_value(f_[i], fp_[i], f_[i + 1], fp_[i + 1], h_, s);
}

double WarpSolution::d1(double t) const {
  size_t i;
  double s;
  locate(t, &i, &s);
  return hermite_d1(f_[i], fp_[i], f_[i + 1], fp_[i + 1], h_, s);
}

double WarpSolution::d2(double t) const { return -lambda_.value(t) * value(t); }

const std::vector<double>& WarpSolution::prefix_integral(int n) const {
  std::lock_guard<std::mutex> lock(cache_mutex_);
  auto it = prefix_cache_.find(n);
  if (it != prefix_cache_.end()) return it->second;
  std::vector<double> pref(n_steps_ + 1, 0.0);
  for (size_t i = 0; i < n_steps_; ++i) {
    double acc = 0.0;
    for (int k = 0; k < 8; ++k) {
      double s = 0.5 * (kGlx[k] + 1.0);
      double v = hermite_value(f_[i], fp_[i], f_[i + 1], fp_[i + 1], h_, s);
      acc += kGlw[k] * powi(v, n - 1);
    }
    pref[i + 1] = pref[i] + acc * h_ / 2;
  }
  return prefix_cache_.emplace(n, std::move(pref)).first->second;
}

ModelSpace solve_warp(const RadialFunction& lambda, double T, double tol) {
  if (!(T > 0)) fail(ErrorKind::bad_parameter, "horizon T must be positive");
  if (!(tol > 0) || tol > 1e-4)
    fail(ErrorKind::bad_parameter, "solver tol must lie in (0, 1e-4]");
  double h_target = std::min(1e-3, T / 1e4);
  size_t N = static_cast<size_t>(std::ceil(T / h_target - 1e-12));
  double h = T / static_cast<double>(N);

  std::vector<double> f(N + 1), fp(N + 1), lam_mid(N);
  f[0] = 0.0;
  fp[0] = 1.0;
  double lam0 = lambda.value(0.0);
  // Taylor bootstrap, sub-stepped across the first cell: the cubic Taylor
  // start at delta plus RK4 sub-steps keeps the node-1 values at full RK4
  // accuracy even when lambda'(0) != 0
  {
    const int sub = 16;
    double delta = h / sub;
    double y = delta - lam0 * delta * delta * delta / 6.0;
    double yp = 1.0 - lam0 * delta * delta / 2.0;
    for (int s = 1; s < sub; ++s) {
      double ts = static_cast<double>(s) * delta;
      double la = lambda.value(ts);
      double lm = lambda.value(ts + delta / 2);
      double lb = lambda.value(ts + delta);
      double k1a = yp, k1b = -la * y;
      double k2a = yp + delta / 2 * k1b, k2b = -lm * (y + delta / 2 * k1a);
      double k3a = yp + delta / 2 * k2b, k3b = -lm * (y + delta / 2 * k2a);
      double k4a = yp + delta * k3b, k4b = -lb * (y + delta * k3a);
      y += delta / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
      yp += delta / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
    }
    f[1] = y;
    fp[1] = yp;
  }
  lam_mid[0] = lambda.value(h / 2);

  double lam_right = lambda.value(h);
  for (size_t i = 1; i < N; ++i) {
    double t = static_cast<double>(i) * h;
    double lam_t = lam_right;
    double lm = lambda.value(t + h / 2);
    lam_right = lambda.value(t + h);
    lam_mid[i] = lm;
    double y = f[i], yp = fp[i];
    double k1a = yp, k1b = -lam_t * y;
    double k2a = yp + h / 2 * k1b, k2b = -lm * (y + h / 2 * k1a);
    double k3a = yp + h / 2 * k2b, k3b = -lm * (y + h / 2 * k2a);
    double k4a = yp + h * k3b, k4b = -lam_right * (y + h * k3a);
    f[i + 1] = y + h / 6 * (k1a + 2 * k2a + 2 * k3a + k4a);
    fp[i + 1] = yp + h / 6 * (k1b + 2 * k2b + 2 * k3b + k4b);
    if (!std::isfinite(f[i + 1]) || !std::isfinite(fp[i + 1]))
      fail(ErrorKind::solver_failure,
           "warping solution blew up near t=" + std::to_string(t));
  }

  // ODE residual |f'' + lambda f| at midpoints, f'' from the f' differences
  double max_res = 0.0;
  for (size_t i = 0; i < N; ++i) {
    double fm = hermite_value(f[i], fp[i], f[i + 1], fp[i + 1], h, 0.5);
    double res = std::abs((fp[i + 1] - fp[i]) / h + lam_mid[i] * fm);
    max_res = std::max(max_res, res / (1.0 + std::abs(fm)));
  }
  if (max_res > tol)
    fail(ErrorKind::solver_failure,
         "ODE residual " + std::to_string(max_res) + " exceeds tol");

  auto sol = std::make_shared<const WarpSolution>(lambda, h, std::move(f),
                                                  std::move(fp), max_res);

  // first zeros of f and f' by sign change + bisection on the interpolant
  auto first_zero = [&](auto&& get_node, auto&& dense) -> Extent {
    for (size_t i = 1; i <= N; ++i) {
      if (get_node(i) <= 0.0) {
        double lo = static_cast<double>(i - 1) * h;
        double hi = static_cast<double>(i) * h;
        if (get_node(i) == 0.0) return Extent{hi, true};
        while (hi - lo > 1e-12) {
          double mid = lo + (hi - lo) / 2;
          (dense(mid) > 0.0 ? lo : hi) = mid;
        }
        return Extent{lo + (hi - lo) / 2, true};
      }
    }
    return Extent{};
  };
  Extent l = first_zero([&](size_t i) { return sol->node_f(i); },
                        [&](double t) { return sol->value(t); });
  Extent t0 = first_zero([&](size_t i) { return sol->node_fp(i); },
                         [&](double t) { return sol->d1(t); });

  double f_end = l.bounded ? l.value : sol->horizon();
  std::shared_ptr<const WarpSolution> keep = sol;
  RadialFunction ffun = RadialFunction::from_callables(
      "warp-solution", [keep](double t) { return keep->value(t); },
      [keep](double t) { return keep->d1(t); },
      [keep](double t) { return keep->d2(t); }, f_end);

  ModelSpace ms;
  ms.lambda = lambda;
  ms.f = std::move(ffun);
  ms.l = l;
  ms.t0 = t0;
  ms.horizon = sol->horizon();
  ms.grid = sol;
  return ms;
}

ModelSpace space_form(double k, int n) {
  if (n < 2) fail(ErrorKind::bad_parameter, "space form needs n >= 2");
  ModelSpace ms;
  ms.n = n;
  ms.lambda = RadialFunction::constant(k);
  if (k == 0.0) {
    ms.f = RadialFunction::from_ast(make_variable());
  } else {
    double a = std::sqrt(std::abs(k));
    ExprPtr arg = (a == 1.0) ? make_variable()
                             : make_binary(BinaryOp::mul, make_number(a),
                                           make_variable());
    ExprPtr top = make_unary(k > 0 ? UnaryOp::sin : UnaryOp::sinh, arg);
    ExprPtr body = (a == 1.0)
                       ? top
                       : make_binary(BinaryOp::div, top, make_number(a));
    if (k > 0) {
      ms.l = Extent{kPi / a, true};
      ms.t0 = Extent{kPi / (2 * a), true};
      ms.f = RadialFunction::from_ast(body, ms.l.value);
    } else {
      ms.f = RadialFunction::from_ast(body);
    }
  }
  return ms;
}

double model_volume(const ModelSpace& ms, int n, double r) {
  if (n < 2) fail(ErrorKind::bad_parameter, "model volume needs n >= 2");
  double end = ms.domain_end();
  if (!(r >= 0.0) || r > end * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain,
         "radius " + std::to_string(r) + " beyond solution horizon");
  r = std::min(r, end);
  if (r == 0.0) return 0.0;
  double wn = sphere_measure_local(n);
  if (ms.grid && n <= 6) {
    const auto& pref = ms.grid->prefix_integral(n);
    double h = ms.grid->step();
    size_t i = std::min(static_cast<size_t>(r / h), ms.grid->steps() - 1);
    double t_i = static_cast<double>(i) * h;
    double part = 0.0;
    if (r > t_i) {
      double half = (r - t_i) / 2;
      for (int q = 0; q < 8; ++q) {
        double t = t_i + half * (kGlx[q] + 1.0);
        part += kGlw[q] * powi(ms.grid->value(t), n - 1);
      }
      part *= half;
    }
    return wn * (pref[i] + part);
  }
  const RadialFunction& f = ms.f;
  return wn * integrate(
                  [&](double t) {
                    return t <= 0.0 ? 0.0 : std::pow(f.value(t), n - 1);
                  },
                  0.0, r, 1e-11);
}

double model_area(const ModelSpace& ms, int n, double r) {
  if (n < 2) fail(ErrorKind::bad_parameter, "model area needs n >= 2");
  double end = ms.domain_end();
  if (!(r >= 0.0) || r > end * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain,
         "radius " + std::to_string(r) + " beyond solution horizon");
  if (r == 0.0) return 0.0;
  return sphere_measure_local(n) * std::pow(ms.f.value(std::min(r, end)), n - 1);
}

RadialFunction model_warp_function(const ModelSpace& ms) { return ms.f; }

}  // namespace radcurv
