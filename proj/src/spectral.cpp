#include "radcurv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "radcurv/comparison.hpp"
#include "radcurv/constants.hpp"
#include "radcurv/curvature.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

RadialGrid radial_grid(const RotSymManifold& M, double R, int m) {
  if (!(R > 0.0) || !(R < M.L))
    fail(ErrorKind::out_of_domain,
         "ball radius " + format_double(R) + " not inside (0, " +
             format_double(M.L) + ")");
  if (m < 2) fail(ErrorKind::bad_parameter, "grid needs at least two cells");
  RadialGrid G;
  G.R = R;
  G.m = m;
  G.h = R / static_cast<double>(m);
  G.face_w.resize(static_cast<size_t>(m) + 1);
  G.cell_w.resize(static_cast<size_t>(m));
  G.face_w[0] = 0.0;  // pole face carries no flux
  double e = static_cast<double>(M.n - 1);
  for (int j = 1; j <= m; ++j)
    G.face_w[static_cast<size_t>(j)] = std::pow(M.g.value(j * G.h), e);
  for (int i = 0; i < m; ++i)
    G.cell_w[static_cast<size_t>(i)] = std::pow(M.g.value((i + 0.5) * G.h), e);
  return G;
}

RadialStiffness radial_stiffness(const RadialGrid& G, bool dirichlet_outer) {
  int m = G.m;
  double h2 = G.h * G.h;
  RadialStiffness S;
  S.diag.resize(static_cast<size_t>(m));
  S.off.assign(m > 1 ? static_cast<size_t>(m - 1) : 0, 0.0);
  for (int c = 0; c < m; ++c) {
    double wl = G.face_w[static_cast<size_t>(c)];
    double wr = G.face_w[static_cast<size_t>(c) + 1];
    // outer face: Dirichlet reaches u=0 half a cell away (double weight),
    // Neumann transports nothing
    if (c == m - 1) wr = dirichlet_outer ? 2.0 * wr : 0.0;
    S.diag[static_cast<size_t>(c)] = (wl + wr) / h2;
    if (c + 1 < m)
      S.off[static_cast<size_t>(c)] = -G.face_w[static_cast<size_t>(c) + 1] / h2;
  }
  return S;
}

std::vector<double> solve_tridiag(const std::vector<double>& diag,
                                  const std::vector<double>& off,
                                  std::vector<double> rhs) {
  size_t m = diag.size();
  if (rhs.size() != m || off.size() + 1 != std::max<size_t>(m, 1))
    fail(ErrorKind::bad_parameter, "tridiagonal sizes disagree");
  std::vector<double> c(m, 0.0);
  double piv = diag[0];
  if (!(std::isfinite(piv)) || piv == 0.0)
    fail(ErrorKind::solver_failure, "singular tridiagonal pivot");
  if (m > 1) c[0] = off[0] / piv;
  rhs[0] /= piv;
  for (size_t i = 1; i < m; ++i) {
    piv = diag[i] - off[i - 1] * c[i - 1];
    if (!(std::isfinite(piv)) || piv == 0.0)
      fail(ErrorKind::solver_failure, "singular tridiagonal pivot");
    if (i + 1 < m) c[i] = off[i] / piv;
    rhs[i] = (rhs[i] - off[i - 1] * rhs[i - 1]) / piv;
  }
  for (size_t i = m - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
  return rhs;
}

namespace {

// eigenvalues of (A, B) below sigma = negative pivots of the LDL^T sweep
int count_below(const RadialStiffness& A, const std::vector<double>& b,
                double sigma) {
  int m = static_cast<int>(b.size());
  int cnt = 0;
  double d = 1.0;
  for (int i = 0; i < m; ++i) {
    double sub = i ? A.off[static_cast<size_t>(i - 1)] *
                         A.off[static_cast<size_t>(i - 1)] / d
                   : 0.0;
    d = A.diag[static_cast<size_t>(i)] - sigma * b[static_cast<size_t>(i)] - sub;
    if (d == 0.0) d = -1e-300;
    if (std::isinf(d)) d = d > 0.0 ? 1e300 : -1e300;
    if (d < 0.0) ++cnt;
  }
  return cnt;
}

double smallest_eigenvalue(const RadialStiffness& A,
                           const std::vector<double>& b) {
  double hi = 1.0;
  int guard = 0;
  while (count_below(A, b, hi) < 1) {
    hi *= 4.0;
    if (++guard > 600)
      fail(ErrorKind::eigensolve_failure, "failed to bracket an eigenvalue");
  }
  double lo = 0.0;
  guard = 0;
  while (count_below(A, b, lo) > 0) {  // defensive; our pencils are definite
    lo = lo == 0.0 ? -1.0 : 2.0 * lo;
    if (++guard > 600)
      fail(ErrorKind::eigensolve_failure, "failed to bracket from below");
  }
  for (int it = 0; it < 300 && hi - lo > 1e-15 * (std::abs(hi) + 1e-30); ++it) {
    double mid = 0.5 * (lo + hi);
    if (count_below(A, b, mid) < 1)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// smallest eigenpair: Sturm bisection + inverse iteration from a shift just
// below lambda_1 (the shifted matrix stays positive definite)
double smallest_eigenpair(const RadialGrid& G, std::vector<double>* u_out) {
  RadialStiffness A = radial_stiffness(G, true);
  double lam = smallest_eigenvalue(A, G.cell_w);
  double sigma = lam * (1.0 - 1e-6);
  std::vector<double> diag(A.diag);
  for (size_t i = 0; i < diag.size(); ++i) diag[i] -= sigma * G.cell_w[i];
  std::vector<double> u(G.cell_w.size(), 1.0);
  for (int it = 0; it < 6; ++it) {
    std::vector<double> rhs(u.size());
    for (size_t i = 0; i < u.size(); ++i) rhs[i] = G.cell_w[i] * u[i];
    u = solve_tridiag(diag, A.off, rhs);
    double peak = 0.0;
    for (double x : u)
      if (std::abs(x) > std::abs(peak)) peak = x;
    if (peak == 0.0 || !std::isfinite(peak))
      fail(ErrorKind::eigensolve_failure, "inverse iteration collapsed");
    for (double& x : u) x /= peak;  // signed: makes the profile positive
  }
  if (u_out) *u_out = std::move(u);
  return lam;
}

int grid_for_radius(double R) {
  double want = std::lround(200.0 * R);
  return static_cast<int>(std::clamp(want, 400.0, 20000.0));
}

int plap_grid_for_radius(double R) {
  double want = std::lround(100.0 * R);
  return static_cast<int>(std::clamp(want, 200.0, 4000.0));
}

}  // namespace

SpectralEstimate dirichlet_eigenvalue(const RotSymManifold& M, double R,
                                      int grid_size) {
  if (grid_size < 100)
    fail(ErrorKind::bad_parameter, "grid_size must be at least 100");
  RadialGrid G = radial_grid(M, R, grid_size);
  RadialGrid Gh = radial_grid(M, R, grid_size / 2);
  double lam = smallest_eigenvalue(radial_stiffness(G, true), G.cell_w);
  double lam_half = smallest_eigenvalue(radial_stiffness(Gh, true), Gh.cell_w);
  if (!(lam > 0.0) || !std::isfinite(lam))
    fail(ErrorKind::eigensolve_failure, "nonpositive ground eigenvalue");
  SpectralEstimate est;
  est.value = lam;
  est.op = "laplacian";
  est.flat = 2.0;
  est.R = R;
  est.grid_size = grid_size;
  est.method = "finite-difference eigensolve";
  // second-order scheme: |lam(h) - lam(h/2)|/3 ~ the remaining error of the
  // half-step value, and also ~ the error of lam(h) up to the factor 4
  est.residual = std::abs(lam - lam_half) / 3.0;
  return est;
}

GroundState dirichlet_ground_state(const RotSymManifold& M, double R,
                                   int grid_size) {
  GroundState gs;
  gs.estimate = dirichlet_eigenvalue(M, R, grid_size);
  gs.grid = radial_grid(M, R, grid_size);
  smallest_eigenpair(gs.grid, &gs.u);
  return gs;
}

namespace {

struct Quotient {
  double E = 0.0;
  double D = 0.0;
  double Q = 0.0;
};

double sgn_pow(double d, double e) {
  return d >= 0.0 ? std::pow(d, e) : -std::pow(-d, e);
}

Quotient eval_quotient(const RadialGrid& G, double flat,
                       const std::vector<double>& u) {
  int m = G.m;
  double hb = std::pow(G.h, flat - 1.0);
  double hb2 = std::pow(0.5 * G.h, flat - 1.0);
  Quotient q;
  for (int c = 0; c + 1 < m; ++c)
    q.E += G.face_w[static_cast<size_t>(c) + 1] *
           std::pow(std::abs(u[static_cast<size_t>(c) + 1] -
                             u[static_cast<size_t>(c)]),
                    flat) /
           hb;
  q.E += G.face_w[static_cast<size_t>(m)] *
         std::pow(std::abs(u[static_cast<size_t>(m) - 1]), flat) / hb2;
  for (int c = 0; c < m; ++c)
    q.D += G.cell_w[static_cast<size_t>(c)] *
           std::pow(std::abs(u[static_cast<size_t>(c)]), flat) * G.h;
  q.Q = q.E / q.D;
  return q;
}

void quotient_gradient(const RadialGrid& G, double flat,
                       const std::vector<double>& u, const Quotient& q,
                       std::vector<double>* grad) {
  int m = G.m;
  double hb = std::pow(G.h, flat - 1.0);
  double hb2 = std::pow(0.5 * G.h, flat - 1.0);
  grad->assign(static_cast<size_t>(m), 0.0);
  for (int c = 0; c + 1 < m; ++c) {
    double t = flat * G.face_w[static_cast<size_t>(c) + 1] *
               sgn_pow(u[static_cast<size_t>(c) + 1] - u[static_cast<size_t>(c)],
                       flat - 1.0) /
               hb;
    (*grad)[static_cast<size_t>(c)] -= t;
    (*grad)[static_cast<size_t>(c) + 1] += t;
  }
  (*grad)[static_cast<size_t>(m) - 1] +=
      flat * G.face_w[static_cast<size_t>(m)] *
      sgn_pow(u[static_cast<size_t>(m) - 1], flat - 1.0) / hb2;
  for (int c = 0; c < m; ++c) {
    double dD = flat * G.cell_w[static_cast<size_t>(c)] *
                sgn_pow(u[static_cast<size_t>(c)], flat - 1.0) * G.h;
    (*grad)[static_cast<size_t>(c)] =
        ((*grad)[static_cast<size_t>(c)] - q.Q * dD) / q.D;
  }
}

// gradient descent on the quotient, preconditioned by the cell measure, with
// a backtracking line search; stops once 50 iterations buy less than 1e-10
// relative decrease (or the gradient can no longer move the iterate)
double minimize_quotient(const RadialGrid& G, double flat,
                         std::vector<double>* u_io) {
  std::vector<double>& u = *u_io;
  int m = G.m;
  {
    Quotient q0 = eval_quotient(G, flat, u);
    if (!std::isfinite(q0.Q) || q0.D <= 0.0)
      fail(ErrorKind::optimizer_stalled, "unusable start profile");
    double s = std::pow(q0.D, 1.0 / flat);
    for (double& x : u) x /= s;
  }
  Quotient q = eval_quotient(G, flat, u);
  std::vector<double> grad, trial(static_cast<size_t>(m));
  std::vector<double> hist;
  double step = 1.0;
  int frozen = 0;
  for (int it = 0; it < 60000; ++it) {
    hist.push_back(q.Q);
    if (hist.size() > 50) {
      double past = hist[hist.size() - 51];
      if (past - q.Q < 1e-10 * q.Q) break;
    }
    quotient_gradient(G, flat, u, q, &grad);
    bool moved = false;
    for (int bt = 0; bt < 60 && !moved; ++bt) {
      for (int c = 0; c < m; ++c)
        trial[static_cast<size_t>(c)] =
            u[static_cast<size_t>(c)] -
            step * grad[static_cast<size_t>(c)] /
                (G.cell_w[static_cast<size_t>(c)] * G.h);
      Quotient qt = eval_quotient(G, flat, trial);
      if (std::isfinite(qt.Q) && qt.Q < q.Q) {
        u.swap(trial);
        q = qt;
        step = std::min(step * 1.3, 1e8);
        moved = true;
      } else {
        step *= 0.5;
      }
    }
    if (!moved) {
      if (++frozen >= 3) break;  // gradient numerically zero: converged
      step = 1.0;
    } else {
      frozen = 0;
      if (q.D > 4.0 || q.D < 0.25) {
        double s = std::pow(q.D, 1.0 / flat);
        for (double& x : u) x /= s;
        q = eval_quotient(G, flat, u);
      }
    }
    if (step < 1e-18) break;
  }
  if (!std::isfinite(q.Q) || q.Q <= 0.0)
    fail(ErrorKind::optimizer_stalled, "quotient descent failed to converge");
  return q.Q;
}

// transfer cell values to a finer grid: flat across the pole, linear between
// centers, linear to the Dirichlet zero at R
std::vector<double> prolong(const RadialGrid& Gc, const std::vector<double>& uc,
                            const RadialGrid& Gf) {
  std::vector<double> uf(static_cast<size_t>(Gf.m));
  double x0 = 0.5 * Gc.h;
  double xl = (Gc.m - 0.5) * Gc.h;
  for (int i = 0; i < Gf.m; ++i) {
    double x = (i + 0.5) * Gf.h;
    double v;
    if (x <= x0) {
      v = uc.front();
    } else if (x >= xl) {
      v = uc.back() * (Gf.R - x) / (Gf.R - xl);
    } else {
      int k = static_cast<int>((x - x0) / Gc.h);
      k = std::clamp(k, 0, Gc.m - 2);
      double xk = x0 + k * Gc.h;
      double s = (x - xk) / Gc.h;
      v = (1.0 - s) * uc[static_cast<size_t>(k)] +
          s * uc[static_cast<size_t>(k) + 1];
    }
    uf[static_cast<size_t>(i)] = v;
  }
  return uf;
}

}  // namespace

SpectralEstimate p_laplacian_eigenvalue(const RotSymManifold& M, double R,
                                        double flat, int grid_size) {
  if (!(flat > 1.0) || !(flat <= 10.0))
    fail(ErrorKind::bad_parameter, "flat exponent must lie in (1, 10]");
  if (grid_size < 100)
    fail(ErrorKind::bad_parameter, "grid_size must be at least 100");
  // coarse-to-fine halvings down to ~16 cells
  std::vector<int> levels;
  for (int cur = grid_size; cur >= 16; cur /= 2) {
    levels.push_back(cur);
    if (cur < 32) break;
  }
  std::reverse(levels.begin(), levels.end());

  RadialGrid G = radial_grid(M, R, levels.front());
  std::vector<double> u;
  smallest_eigenpair(G, &u);  // the flat=2 ground state seeds the descent

  double q_prev = 0.0, q_cur = 0.0;
  for (size_t li = 0; li < levels.size(); ++li) {
    if (li > 0) {
      RadialGrid Gf = radial_grid(M, R, levels[li]);
      u = prolong(G, u, Gf);
      G = std::move(Gf);
    }
    q_prev = q_cur;
    q_cur = minimize_quotient(G, flat, &u);
    if (li == 0) {
      // perturbed restarts guard against a poor coarse basin; best kept
      double best = q_cur;
      std::vector<double> ubest = u;
      for (int k = 1; k <= 2; ++k) {
        std::vector<double> up = ubest;
        for (int i = 0; i < G.m; ++i)
          up[static_cast<size_t>(i)] *=
              1.0 + 0.05 * std::sin((2.0 * k + 1.0) * std::numbers::pi *
                                    (i + 0.5) * G.h / R);
        double qp = minimize_quotient(G, flat, &up);
        if (qp < best) {
          best = qp;
          ubest.swap(up);
        }
      }
      q_cur = best;
      u = std::move(ubest);
    }
  }

  SpectralEstimate est;
  est.value = q_cur;
  est.flat = flat;
  est.op = "p-laplacian(" + format_double(flat) + ")";
  est.R = R;
  est.grid_size = levels.back();
  est.method = "Rayleigh minimization";
  est.residual = levels.size() > 1 ? std::abs(q_cur - q_prev) / 3.0 : 0.0;
  return est;
}

std::vector<double> radius_ladder(double R0, int steps) {
  if (!(R0 > 0.0)) fail(ErrorKind::bad_parameter, "ladder base must be positive");
  if (steps < 0 || steps > 12)
    fail(ErrorKind::bad_parameter, "ladder supports at most 12 doublings");
  std::vector<double> out;
  double R = R0;
  for (int k = 0; k <= steps; ++k, R *= 2.0) out.push_back(R);
  return out;
}

namespace {

void check_ladder(const std::vector<double>& ladder) {
  if (ladder.size() < 2)
    fail(ErrorKind::ladder_too_short, "need at least two ladder rungs");
  for (size_t i = 0; i + 1 < ladder.size(); ++i)
    if (!(ladder[i] < ladder[i + 1]))
      fail(ErrorKind::bad_parameter, "ladder must be strictly increasing");
  if (!(ladder.front() > 0.0))
    fail(ErrorKind::bad_parameter, "ladder radii must be positive");
}

double tail_max(const std::vector<double>& v) {
  size_t k = std::min<size_t>(3, v.size());
  return *std::max_element(v.end() - static_cast<long>(k), v.end());
}

bool tail_settled(const std::vector<double>& v) {
  if (v.size() < 3) return false;
  double a = v[v.size() - 3], b = v[v.size() - 2], c = v.back();
  double scale = std::max({std::abs(a), std::abs(b), std::abs(c), 1e-30});
  return std::abs(a - b) < 1e-3 * scale && std::abs(b - c) < 1e-3 * scale &&
         std::abs(a - c) < 1e-3 * scale;
}

// geometric-decay extrapolation of the tail (exact for sequences approaching
// the limit like C/R along a doubling ladder); used only to size the
// uncertainty of a tail-max limsup estimate
double tail_extrapolate(const std::vector<double>& v) {
  if (v.size() < 2) return v.back();
  return std::max(0.0, 2.0 * v.back() - v[v.size() - 2]);
}

// lambda(R) ~ lambda_inf + C/R^2, so rungs R and rho*R extrapolate to
// (rho^2 lam_2 - lam_1) / (rho^2 - 1); the correction term is the uncertainty
void extrapolate_pair(double R1, double lam1, double R2, double lam2,
                      double* est, double* unc) {
  double rho2 = (R2 / R1) * (R2 / R1);
  *est = (rho2 * lam2 - lam1) / (rho2 - 1.0);
  *unc = std::abs(lam2 - lam1) / (rho2 - 1.0);
}

}  // namespace

SpectralChain spec_chain(const RotSymManifold& M, double p,
                         const std::vector<double>& ladder, double alpha) {
  check_ladder(ladder);
  if (!(p > M.n / 2.0))
    fail(ErrorKind::bad_parameter, "exponent p must exceed n/2");
  SpectralChain ch;
  ch.ladder = ladder;
  ch.alpha = alpha;
  for (double R : ladder)
    ch.eigenvalues.push_back(
        dirichlet_eigenvalue(M, R, grid_for_radius(R)).value);
  size_t K = ladder.size();
  extrapolate_pair(ladder[K - 2], ch.eigenvalues[K - 2], ladder[K - 1],
                   ch.eigenvalues[K - 1], &ch.lambda_estimate, &ch.uncertainty);

  std::vector<double> qs;
  for (double R : ladder) qs.push_back(sphere_area(M, R) / ball_volume(M, R));
  double qsup = tail_max(qs);
  ch.middle = 0.25 * qsup * qsup;
  ch.converged = tail_settled(qs);

  RadialFunction zero = RadialFunction::constant(0.0);
  std::vector<double> ks;
  for (size_t i = K >= 3 ? K - 3 : 0; i < K; ++i)
    ks.push_back(
        integral_curvature(M, zero, p, ladder[i], CurvKind::type1_ricci, true)
            .value);
  double ksup = *std::max_element(ks.begin(), ks.end());
  double c8v = c8(M.n, p);
  double nm1 = static_cast<double>(M.n - 1);
  double rfac = c8v / (2.0 * std::sqrt(nm1));
  ch.right = rfac * rfac * ksup;

  if (alpha > 0.0) {
    ch.alpha_right = 0.25 * c8v * c8v * alpha * alpha;
    ch.alpha_norm =
        integral_curvature(M, RadialFunction::constant(-alpha * alpha), p,
                           ladder.back(), CurvKind::type1_ricci, false)
            .value;
  }

  // finite ladders only estimate the two limsups; their tail-extrapolation
  // gap joins the tolerance so a slowly decaying middle term (flat space)
  // cannot produce a spurious chain violation
  double qext = tail_extrapolate(qs);
  double mid_unc = std::abs(ch.middle - 0.25 * qext * qext);
  double kext = tail_extrapolate(ks);
  double right_unc = rfac * rfac * std::abs(ksup - kext);
  double tol1 = 1e-6 * (1.0 + std::abs(ch.middle));
  double tol2 = 1e-6 * (1.0 + std::abs(ch.right));
  ch.chain_ok =
      (ch.lambda_estimate - ch.uncertainty <= ch.middle + mid_unc + tol1) &&
      (ch.middle - mid_unc <= ch.right + right_unc + tol2);
  return ch;
}

double spec_upper_bound(const RotSymManifold& M, double p,
                        const std::vector<double>& ladder) {
  return spec_chain(M, p, ladder).middle;
}

PlapChain spec_chain_plap(const RotSymManifold& M, double p, double flat,
                          double alpha, const std::vector<double>& ladder) {
  check_ladder(ladder);
  if (!(p > M.n / 2.0))
    fail(ErrorKind::bad_parameter, "exponent p must exceed n/2");
  if (!(flat > 1.0) || !(flat <= 10.0))
    fail(ErrorKind::bad_parameter, "flat exponent must lie in (1, 10]");
  if (!(alpha > 0.0))
    fail(ErrorKind::bad_parameter, "curvature scale alpha must be positive");
  PlapChain ch;
  ch.ladder = ladder;
  ch.alpha = alpha;
  for (double R : ladder)
    ch.eigenvalues.push_back(
        p_laplacian_eigenvalue(M, R, flat, plap_grid_for_radius(R)).value);
  size_t K = ladder.size();
  extrapolate_pair(ladder[K - 2], ch.eigenvalues[K - 2], ladder[K - 1],
                   ch.eigenvalues[K - 1], &ch.lambda_estimate, &ch.uncertainty);

  std::vector<double> qs;
  for (double R : ladder) qs.push_back(sphere_area(M, R) / ball_volume(M, R));
  double qsup = tail_max(qs);
  ch.middle = std::pow(qsup / flat, flat);
  ch.converged = tail_settled(qs);

  RadialFunction zero = RadialFunction::constant(0.0);
  std::vector<double> ks;
  for (size_t i = K >= 3 ? K - 3 : 0; i < K; ++i)
    ks.push_back(
        integral_curvature(M, zero, p, ladder[i], CurvKind::type1_ricci, true)
            .value);
  double ksup = *std::max_element(ks.begin(), ks.end());
  double c8v = c8(M.n, p);
  double nm1 = static_cast<double>(M.n - 1);
  ch.right = std::pow(c8v / (flat * std::sqrt(nm1)), flat) *
             std::pow(ksup, 0.5 * flat);
  ch.lower = std::pow(nm1 * alpha / flat, flat);
  ch.upper = std::pow(c8v * alpha / flat, flat);
  ch.alpha_norm =
      integral_curvature(M, RadialFunction::constant(-alpha * alpha), p,
                         ladder.back(), CurvKind::type1_ricci, false)
          .value;

  double qext = tail_extrapolate(qs);
  double mid_unc = std::abs(ch.middle - std::pow(qext / flat, flat));
  double tol = 1e-6 * (1.0 + std::abs(ch.upper) + std::abs(ch.middle));
  ch.chain_ok =
      (ch.lambda_estimate + ch.uncertainty >= ch.lower - tol) &&
      (ch.lambda_estimate - ch.uncertainty <= ch.middle + mid_unc + tol) &&
      (ch.lambda_estimate - ch.uncertainty <= ch.upper + tol);
  return ch;
}

double spec_upper_bound_plap(const RotSymManifold& M, double p, double flat,
                             double alpha, const std::vector<double>& ladder) {
  return spec_chain_plap(M, p, flat, alpha, ladder).middle;
}

double rayleigh_quotient(const RotSymManifold& M, double c, double R_max) {
  if (!(c > 0.0)) fail(ErrorKind::bad_parameter, "decay rate c must be positive");
  if (!(R_max > 0.0) || !(R_max < M.L))
    fail(ErrorKind::out_of_domain, "truncation radius not inside (0, L)");
  double a1 = sphere_area(M, R_max);
  double a2 = sphere_area(M, 0.5 * R_max);
  double a4 = sphere_area(M, 0.25 * R_max);
  if (!(a1 > 0.0) || !(a2 > 0.0) || !(a4 > 0.0))
    fail(ErrorKind::out_of_domain, "sphere area vanishes below R_max");
  // exponential growth rate by log-derivative extrapolation: exact 0 for any
  // polynomial area, exact sigma for e^{sigma t} times a power
  double r1 = (std::log(a1) - std::log(a2)) / (0.5 * R_max);
  double r2 = (std::log(a2) - std::log(a4)) / (0.25 * R_max);
  double growth = std::max(0.0, 2.0 * r1 - r2);
  if (c < growth - 1e-6 * (1.0 + growth))
    fail(ErrorKind::not_integrable,
         "profile exp(-" + format_double(c) +
             " t/2) decays too slowly against area growth rate ~ " +
             format_double(growth));
  double num = integrate(
      [&](double t) { return 0.25 * c * c * std::exp(-c * t) * sphere_area(M, t); },
      0.0, R_max, 1e-10);
  double den = integrate(
      [&](double t) { return std::exp(-c * t) * sphere_area(M, t); }, 0.0,
      R_max, 1e-10);
  if (!(den > 0.0)) fail(ErrorKind::quadrature_failure, "empty denominator");
  return num / den;
}

}  // namespace radcurv
