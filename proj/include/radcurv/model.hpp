#pragma once

#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "radcurv/expr.hpp"

namespace radcurv {

// positive real or "unbounded" (value = +inf when unbounded)
struct Extent {
  double value = std::numeric_limits<double>::infinity();
  bool bounded = false;
};

// dense RK4 solution of f'' + lambda f = 0, f(0)=0, f'(0)=1 on a uniform grid
class WarpSolution {
 public:
  WarpSolution(RadialFunction lambda, double h, std::vector<double> f,
               std::vector<double> fp, double max_scaled_residual);

  double value(double t) const;  // cubic Hermite between nodes
  double d1(double t) const;
  double d2(double t) const;  // from the ODE: -lambda(t) * value(t)

  double horizon() const { return h_ * static_cast<double>(n_steps_); }
  double step() const { return h_; }
  size_t steps() const { return n_steps_; }
  double node_f(size_t i) const { return f_[i]; }
  double node_fp(size_t i) const { return fp_[i]; }
  double max_residual() const { return max_res_; }
  const RadialFunction& lambda() const { return lambda_; }

  // cumulative \int_0^{t_i} f^{n-1} dt (no w_n factor), built lazily per n
  const std::vector<double>& prefix_integral(int n) const;

 private:
  void locate(double t, size_t* idx, double* s) const;

  RadialFunction lambda_;
  double h_;
  size_t n_steps_;
  std::vector<double> f_, fp_;
  double max_res_;
  mutable std::mutex cache_mutex_;
  mutable std::map<int, std::vector<double>> prefix_cache_;
};

// comparison space M^- = [0,l) x_f S^{n-1}
struct ModelSpace {
  int n = 0;  // dimension; space_form sets it, solve_warp leaves it to callers
  RadialFunction lambda;
  RadialFunction f;  // dense warping function (grid-backed or closed form)
  Extent l;          // first zero of f
  Extent t0;         // first zero of f'
  double horizon = std::numeric_limits<double>::infinity();
  std::shared_ptr<const WarpSolution> grid;  // null for closed-form space forms

  // largest radius for which f (hence volumes) is defined
  double domain_end() const {
    double end = l.bounded ? l.value : horizon;
    return std::min(end, horizon);
  }
};

// integrate the warping ODE out to horizon T; tol gates the ODE residual
// |f'' + lambda f| <= tol*(1+|f|) checked at grid midpoints
ModelSpace solve_warp(const RadialFunction& lambda, double T = 50.0,
                      double tol = 1e-7);

// closed-form space form of constant curvature k (bypasses the solver)
ModelSpace space_form(double k, int n);

// vol(B(q^-, r)) = w_n \int_0^r f^{n-1}
double model_volume(const ModelSpace& ms, int n, double r);
// area(\partial B(q^-, r)) = w_n f^{n-1}(r)
double model_area(const ModelSpace& ms, int n, double r);

// the model's warping f as a standalone RadialFunction (for reuse as a
// manifold warping, e.g. self-comparison tests)
RadialFunction model_warp_function(const ModelSpace& ms);

}  // namespace radcurv
