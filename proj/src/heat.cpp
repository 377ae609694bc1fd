#include "radcurv/heat.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "radcurv/constants.hpp"
#include "radcurv/curvature.hpp"
#include "radcurv/errors.hpp"

namespace radcurv {

const char* heat_bc_name(HeatBc bc) {
  return bc == HeatBc::dirichlet ? "dirichlet" : "neumann";
}

const std::vector<double>& HeatSolution::at_time(double tau) const {
  if (times.empty()) fail(ErrorKind::bad_parameter, "empty trajectory");
  size_t best = 0;
  for (size_t j = 1; j < times.size(); ++j)
    if (std::abs(times[j] - tau) < std::abs(times[best] - tau)) best = j;
  return values[best];
}

namespace {

double cell_mass(int n, const RadialGrid& G, const std::vector<double>& u) {
  double s = 0.0;
  for (size_t i = 0; i < u.size(); ++i) s += G.cell_w[i] * u[i];
  return sphere_measure(n) * G.h * s;
}

// one implicit step of (B/dt + theta A) u' = (B/dt - (1-theta) A) u;
// theta = 1/2 is Crank-Nicolson, theta = 1 backward Euler
void implicit_step(const RadialGrid& G, const RadialStiffness& A, double dt,
                   double theta, std::vector<double>* u) {
  size_t m = static_cast<size_t>(G.m);
  std::vector<double> diag(m), rhs(m);
  double expl = 1.0 - theta;
  const std::vector<double>& v = *u;
  for (size_t i = 0; i < m; ++i) {
    diag[i] = G.cell_w[i] / dt + theta * A.diag[i];
    double r = (G.cell_w[i] / dt - expl * A.diag[i]) * v[i];
    if (i > 0) r -= expl * A.off[i - 1] * v[i - 1];
    if (i + 1 < m) r -= expl * A.off[i] * v[i + 1];
    rhs[i] = r;
  }
  std::vector<double> off(A.off);
  for (double& x : off) x *= theta;
  try {
    *u = solve_tridiag(diag, off, std::move(rhs));
  } catch (const Error& e) {
    fail(ErrorKind::step_rejected, e.what());
  }
  for (double x : *u)
    if (!std::isfinite(x))
      fail(ErrorKind::step_rejected, "non-finite solution value");
}

// full trajectory over `steps` uniform steps; the first step runs as two
// backward-Euler half-steps (rough data would make Crank-Nicolson ring)
std::vector<std::vector<double>> evolve(const RadialGrid& G, HeatBc bc,
                                        std::vector<double> u, int steps,
                                        double dtau) {
  RadialStiffness A = radial_stiffness(G, bc == HeatBc::dirichlet);
  std::vector<std::vector<double>> rows;
  rows.reserve(static_cast<size_t>(steps) + 1);
  rows.push_back(u);
  for (int k = 0; k < steps; ++k) {
    if (k == 0) {
      implicit_step(G, A, 0.5 * dtau, 1.0, &u);
      implicit_step(G, A, 0.5 * dtau, 1.0, &u);
    } else {
      implicit_step(G, A, dtau, 0.5, &u);
    }
    rows.push_back(u);
  }
  return rows;
}

}  // namespace

HeatSolution solve_radial_heat(const RotSymManifold& M, double R, HeatBc bc,
                               const RadialFunction& u0, double T_heat,
                               int grid_size) {
  if (!(T_heat > 0.0)) fail(ErrorKind::bad_parameter, "horizon must be positive");
  if (grid_size < 10) fail(ErrorKind::bad_parameter, "grid too coarse");
  HeatSolution sol;
  sol.n = M.n;
  sol.bc = bc;
  sol.grid = radial_grid(M, R, grid_size);
  int steps = std::max(1, static_cast<int>(std::lround(T_heat / sol.grid.h)));
  double dtau = T_heat / steps;
  std::vector<double> u(static_cast<size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i)
    u[static_cast<size_t>(i)] = u0.value((i + 0.5) * sol.grid.h);
  sol.values = evolve(sol.grid, bc, std::move(u), steps, dtau);
  sol.times.resize(sol.values.size());
  sol.mass.resize(sol.values.size());
  for (size_t j = 0; j < sol.values.size(); ++j) {
    sol.times[j] = static_cast<double>(j) * dtau;
    sol.mass[j] = cell_mass(M.n, sol.grid, sol.values[j]);
  }
  return sol;
}

RadialFunction cell_profile(const RadialGrid& G, std::vector<double> cells,
                            HeatBc bc) {
  if (static_cast<int>(cells.size()) != G.m)
    fail(ErrorKind::bad_parameter, "cell count does not match the grid");
  auto data = std::make_shared<const std::vector<double>>(std::move(cells));
  double h = G.h, R = G.R;
  int m = G.m;
  auto locate = [h, R, m, bc, data](double t, double* val, double* slope) {
    const std::vector<double>& u = *data;
    double x0 = 0.5 * h;
    double xl = (m - 0.5) * h;
    if (t <= x0) {
      *val = u.front();
      *slope = 0.0;
    } else if (t >= xl) {
      if (bc == HeatBc::dirichlet) {
        double s = -u.back() / (R - xl);
        *val = t >= R ? 0.0 : u.back() + s * (t - xl);
        *slope = t >= R ? 0.0 : s;
      } else {
        *val = u.back();
        *slope = 0.0;
      }
    } else {
      int k = std::clamp(static_cast<int>((t - x0) / h), 0, m - 2);
      double xk = x0 + k * h;
      double s = (u[static_cast<size_t>(k) + 1] - u[static_cast<size_t>(k)]) / h;
      *val = u[static_cast<size_t>(k)] + s * (t - xk);
      *slope = s;
    }
  };
  auto value = [locate](double t) {
    double v, s;
    locate(t, &v, &s);
    return v;
  };
  auto d1 = [locate](double t) {
    double v, s;
    locate(t, &v, &s);
    return s;
  };
  auto d2 = [data, h, m](double t) {
    const std::vector<double>& u = *data;
    int k = std::clamp(static_cast<int>(t / h - 0.5), 1, m - 2);
    return (u[static_cast<size_t>(k) + 1] - 2.0 * u[static_cast<size_t>(k)] +
            u[static_cast<size_t>(k) - 1]) /
           (h * h);
  };
  return RadialFunction::from_callables("heat-kernel", value, d1, d2, R);
}

namespace {

// the delta at the pole is mollified into the Gaussian exp(-x^2/2s2), which
// coincides with the free kernel at time t0 = s2/2, so the clock starts there
// and the solver covers tau - t0.  s2 = 8h keeps the bump wide enough that
// grid-frequency modes (whose Crank-Nicolson factors sit near -1) carry no
// amplitude, while t0 -> 0 under refinement.
struct KernelStart {
  std::vector<double> u;
  double t0 = 0.0;
};

KernelStart kernel_start(int n, const RadialGrid& G) {
  KernelStart ks;
  double s2 = 8.0 * G.h;
  ks.t0 = 0.5 * s2;
  ks.u.resize(static_cast<size_t>(G.m));
  for (int i = 0; i < G.m; ++i) {
    double x = (i + 0.5) * G.h;
    ks.u[static_cast<size_t>(i)] = std::exp(-0.5 * x * x / s2);
  }
  double mass = cell_mass(n, G, ks.u);
  for (double& x : ks.u) x /= mass;
  return ks;
}

}  // namespace

RadialFunction heat_kernel(const RotSymManifold& M, double R, HeatBc bc,
                           double tau, int grid_size) {
  if (grid_size < 10) fail(ErrorKind::bad_parameter, "grid too coarse");
  RadialGrid G = radial_grid(M, R, grid_size);
  if (!(tau >= 10.0 * G.h * (1.0 - 1e-12)))
    fail(ErrorKind::time_too_small,
         "tau below ten time steps (" + format_double(10.0 * G.h) +
             "); the mollified delta still dominates there");
  KernelStart ks = kernel_start(M.n, G);
  double T = tau - ks.t0;
  int steps = std::max(10, static_cast<int>(std::lround(T / G.h)));
  double dtau = T / steps;
  auto rows = evolve(G, bc, std::move(ks.u), steps, dtau);
  return cell_profile(G, std::move(rows.back()), bc);
}

VerificationReport verify_thm6_1(const RotSymManifold& M,
                                 const ModelSpace* ms_lower,
                                 const ModelSpace* ms_upper, double r0,
                                 const std::vector<double>& tau_grid) {
  VerificationReport rep;
  rep.theorem_id = TheoremId::heat_kernel;
  if (!ms_lower && !ms_upper)
    fail(ErrorKind::bad_parameter, "need a model on at least one side");
  if (tau_grid.empty()) fail(ErrorKind::bad_parameter, "empty tau grid");
  for (size_t j = 0; j + 1 < tau_grid.size(); ++j)
    if (!(tau_grid[j] < tau_grid[j + 1]))
      fail(ErrorKind::bad_parameter, "tau grid must increase");
  if (!(tau_grid.front() > 0.0))
    fail(ErrorKind::bad_parameter, "tau grid must be positive");
  if (!(r0 > 0.0) || !(r0 < M.L))
    fail(ErrorKind::hypothesis_unmet,
         "comparison radius must stay below the injectivity bound");
  for (const ModelSpace* ms : {ms_lower, ms_upper})
    if (ms && !(r0 < ms->domain_end()))
      fail(ErrorKind::hypothesis_unmet,
           "comparison radius must stay below the model's first warp zero");

  const int m = 400;
  RadialGrid G = radial_grid(M, r0, m);
  if (!(tau_grid.front() >= 10.0 * G.h * (1.0 - 1e-12)))
    fail(ErrorKind::time_too_small,
         "first tau below ten time steps of the comparison grid");

  rep.add_input("r0", r0);
  rep.add_input("bc", "dirichlet");
  rep.add_input("cells", static_cast<double>(m));
  rep.grid_label = "tau";
  rep.grid = tau_grid;

  // pointwise curvature hypotheses at the cell centers
  if (ms_lower) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(
          worst, density(M, ms_lower->lambda, (i + 0.5) * G.h,
                         CurvKind::type1_ricci));
    rep.add_check("radial Ricci stays above the lower model bound",
                  worst <= 1e-10, "max deficiency " + format_double(worst));
  }
  if (ms_upper) {
    double worst = 0.0;
    for (int i = 0; i < m; ++i)
      worst = std::max(
          worst, density(M, ms_upper->lambda, (i + 0.5) * G.h,
                         CurvKind::type1_sectional));
    rep.add_check("radial sectional stays below the upper model bound",
                  worst <= 1e-10, "max excess " + format_double(worst));
  }

  double t0 = 0.5 * 8.0 * G.h;  // bump start time, same on every manifold
  double tau_max = tau_grid.back();
  int steps =
      std::max(10, static_cast<int>(std::lround((tau_max - t0) / G.h)));
  double dtau = (tau_max - t0) / steps;

  auto kernel_rows = [&](const RotSymManifold& W) {
    RadialGrid GW = radial_grid(W, r0, m);
    KernelStart ks = kernel_start(W.n, GW);
    return evolve(GW, HeatBc::dirichlet, std::move(ks.u), steps, dtau);
  };

  auto rows_M = kernel_rows(M);
  double lhs = 0.0;
  for (const ModelSpace* ms : {ms_lower, ms_upper}) {
    if (!ms) continue;
    RotSymManifold W = make_manifold(M.n, model_warp_function(*ms),
                                     ms->domain_end());
    auto rows_W = kernel_rows(W);
    bool lower_side = ms == ms_lower;
    for (double tau : tau_grid) {
      size_t j = static_cast<size_t>(std::max(
          0L, std::lround((tau - t0) / dtau)));
      j = std::min(j, rows_M.size() - 1);
      for (int i = 0; i < m; ++i) {
        double hm = rows_M[j][static_cast<size_t>(i)];
        double hw = rows_W[j][static_cast<size_t>(i)];
        // lower side wants H_M >= H_model, upper side the reverse
        lhs = std::max(lhs, lower_side ? hw - hm : hm - hw);
      }
    }
    rep.notes.push_back(std::string(lower_side ? "lower" : "upper") +
                        " side compared against lambda = " +
                        ms->lambda.source());
  }
  rep.notes.push_back("lattice: " + format_double(static_cast<double>(m)) +
                      " cells x " + format_double(tau_max / dtau) +
                      " steps, dtau = " + format_double(dtau));
  rep.lhs = lhs;
  rep.rhs = 0.0;
  rep.finalize(1e-3);
  return rep;
}

}  // namespace radcurv
