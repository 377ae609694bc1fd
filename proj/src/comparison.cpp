#include "radcurv/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "radcurv/constants.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/quadrature.hpp"

namespace radcurv {

namespace {

double lambda_min(const RadialFunction& lambda, double a, double b) {
  double m = lambda.value(b);
  for (int i = 0; i <= 256; ++i) {
    double t = std::max(a, 1e-9) + (b - std::max(a, 1e-9)) * i / 256.0;
    m = std::min(m, lambda.value(t));
  }
  return m;
}

bool lambda_nonpositive(const RadialFunction& lambda, double a, double b) {
  for (int i = 0; i <= 256; ++i) {
    double t = std::max(a, 1e-9) + (b - std::max(a, 1e-9)) * i / 256.0;
    if (lambda.value(t) > 1e-12) return false;
  }
  return true;
}

double ratio_y(const RotSymManifold& M, const ModelSpace& ms, double x) {
  return ball_volume(M, x) / model_volume(ms, M.n, x);
}

// tail (last three rungs) nonincreasing and the last value within the
// allowance of the target
bool limit_claim_ok(const std::vector<double>& seq, double target) {
  if (seq.size() < 2) return false;
  size_t m = seq.size();
  size_t from = m >= 3 ? m - 3 : 0;
  for (size_t i = from; i + 1 < m; ++i)
    if (seq[i + 1] > seq[i] + 1e-12 * (1 + std::abs(seq[i]))) return false;
  double allowance = std::max(0.05 * std::abs(seq.front()), 1e-9);
  return seq.back() <= target + allowance;
}

}  // namespace

const char* theorem_id_name(TheoremId id) {
  switch (id) {
    case TheoremId::volume_ratio: return "volume-ratio";
    case TheoremId::volume_ratio_derivative: return "volume-ratio-derivative";
    case TheoremId::bishop_gromov: return "bishop-gromov";
    case TheoremId::doubling: return "doubling";
    case TheoremId::local_comparison: return "local-comparison";
    case TheoremId::tube_spaceform: return "tube-spaceform";
    case TheoremId::tube_general: return "tube-general";
    case TheoremId::cone: return "cone";
    case TheoremId::hypersurface_tube: return "hypersurface-tube";
    case TheoremId::asymptotics: return "asymptotics";
    case TheoremId::iso_local: return "iso-local";
    case TheoremId::iso_ratio: return "iso-ratio";
    case TheoremId::shortest_geodesic: return "shortest-geodesic";
    case TheoremId::divider: return "divider";
    case TheoremId::heat_kernel: return "heat-kernel";
  }
  return "?";
}

TheoremId theorem_id_from_name(const std::string& name) {
  static const TheoremId all[] = {
      TheoremId::volume_ratio,   TheoremId::volume_ratio_derivative,
      TheoremId::bishop_gromov,  TheoremId::doubling,
      TheoremId::local_comparison, TheoremId::tube_spaceform,
      TheoremId::tube_general,   TheoremId::cone,
      TheoremId::hypersurface_tube, TheoremId::asymptotics,
      TheoremId::iso_local,      TheoremId::iso_ratio,
      TheoremId::shortest_geodesic, TheoremId::divider,
      TheoremId::heat_kernel};
  for (TheoremId id : all)
    if (name == theorem_id_name(id)) return id;
  fail(ErrorKind::config_error, "unknown theorem id '" + name + "'");
}

const char* satisfied_name(Satisfied s) {
  switch (s) {
    case Satisfied::yes: return "yes";
    case Satisfied::no: return "no";
    case Satisfied::indeterminate: return "indeterminate";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void VerificationReport::add_input(const std::string& key, double v) {
  inputs.emplace_back(key, format_double(v));
}

void VerificationReport::add_input(const std::string& key,
                                   const std::string& v) {
  inputs.emplace_back(key, v);
}

void VerificationReport::add_check(const std::string& name, bool passed,
                                   std::string detail) {
  hypothesis_checks.push_back({name, passed, std::move(detail)});
}

bool VerificationReport::hypotheses_ok() const {
  for (const auto& c : hypothesis_checks)
    if (!c.passed) return false;
  return true;
}

void VerificationReport::finalize(double tol_scale) {
  slack = rhs - lhs;
  tol_slack = tol_scale * (1 + std::abs(rhs));
  if (!hypotheses_ok())
    satisfied = Satisfied::indeterminate;
  else
    satisfied = slack >= -tol_slack ? Satisfied::yes : Satisfied::no;
}

VerificationReport verify_thm2_1(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double r, double R, double tol) {
  double end = std::min(static_cast<double>(M.L), ms.domain_end());
  if (!(r >= 0) || !(r < R) || R > end * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "need 0 <= r < R <= min(L, l)");
  VerificationReport rep;
  rep.theorem_id = TheoremId::volume_ratio;
  rep.add_input("n", static_cast<double>(M.n));
  rep.add_input("p", p);
  rep.add_input("r", r);
  rep.add_input("R", R);
  rep.grid_label = "radii";
  rep.grid = {r, R};

  rep.add_check("p-range", p > M.n / 2.0, "p > n/2");
  bool nonpos = lambda_nonpositive(ms.lambda, 0.0, R);
  bool within_t0 = ms.t0.bounded ? R <= ms.t0.value * (1 + 1e-12) : true;
  rep.add_check("bound-admissible", nonpos || within_t0,
                nonpos ? "bound nonpositive on (0,R]"
                       : "sign-changing bound needs R <= first critical "
                         "radius of the model warp");

  double k = integral_curvature(M, ms.lambda, p, R, CurvKind::type1_ricci)
                 .value;
  double c = c_main(ms, M.n, p, R);
  double yR = ratio_y(M, ms, R);
  double yr = r == 0.0 ? 1.0 : ratio_y(M, ms, r);
  double e = 1.0 / (2.0 * p);
  rep.lhs = std::pow(yR, e) - std::pow(yr, e);
  rep.rhs = c * std::sqrt(k);
  rep.add_input("k-norm", k);
  rep.add_input("c", c);
  rep.finalize(tol);

  // product-form corollary: vol(B(q,R)) <= (1 + c k^{1/2})^{2p} vol_model(R)
  double lhs2 = ball_volume(M, R);
  double rhs2 = std::pow(1.0 + c * std::sqrt(k), 2.0 * p) *
                model_volume(ms, M.n, R);
  rep.notes.push_back("product form: lhs=" + format_double(lhs2) +
                      " rhs=" + format_double(rhs2));
  if (rep.satisfied == Satisfied::yes &&
      rhs2 - lhs2 < -tol * (1 + std::abs(rhs2)))
    rep.satisfied = Satisfied::no;
  return rep;
}

VerificationReport verify_bishop_gromov(const RotSymManifold& M,
                                        const ModelSpace& ms,
                                        const std::vector<double>& r_grid) {
  if (r_grid.size() < 2)
    fail(ErrorKind::bad_parameter, "ratio grid needs at least two radii");
  for (size_t i = 0; i + 1 < r_grid.size(); ++i)
    if (!(r_grid[i] > 0) || !(r_grid[i] < r_grid[i + 1]))
      fail(ErrorKind::bad_parameter, "ratio grid must be positive increasing");
  double Rmax = r_grid.back();
  double k = integral_curvature(M, ms.lambda, static_cast<double>(M.n), Rmax,
                                CurvKind::type1_ricci)
                 .value;
  if (k > 1e-12)
    fail(ErrorKind::hypothesis_unmet,
         "monotone ratio comparison needs a vanishing deficiency norm, got " +
             format_double(k));
  VerificationReport rep;
  rep.theorem_id = TheoremId::bishop_gromov;
  rep.add_input("n", static_cast<double>(M.n));
  rep.add_input("k-norm", k);
  rep.grid_label = "r";
  rep.grid = r_grid;
  rep.add_check("deficiency-vanishes", true,
                "norm " + format_double(k) + " <= 1e-12");
  double worst = -1e300;
  std::vector<double> ratios;
  for (double r : r_grid) ratios.push_back(ratio_y(M, ms, r));
  for (size_t i = 0; i + 1 < ratios.size(); ++i)
    worst = std::max(worst, ratios[i + 1] - ratios[i]);
  for (double y : ratios) worst = std::max(worst, y - 1.0);
  rep.lhs = worst;  // max over { ratio increments, ratio - 1 }
  rep.rhs = 0.0;
  rep.notes.push_back("ratio must be nonincreasing and <= 1 along the grid");
  rep.finalize();
  return rep;
}

VerificationReport verify_cor3_6(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double D, double alpha) {
  if (!(alpha > 0) || !(alpha < 1))
    fail(ErrorKind::bad_parameter, "alpha must lie in (0,1)");
  if (M.L > D * (1 + 1e-12))
    fail(ErrorKind::out_of_domain, "needs L <= D");
  VerificationReport rep;
  rep.theorem_id = TheoremId::doubling;
  rep.add_input("n", static_cast<double>(M.n));
  rep.add_input("p", p);
  rep.add_input("D", D);
  rep.add_input("alpha", alpha);
  rep.add_check("p-range", p > M.n / 2.0, "p > n/2");
  rep.add_check("bound-nonpositive", lambda_nonpositive(ms.lambda, 0.0, D));

  double c = c_main(ms, M.n, p, D);
  double volfD = model_volume(ms, M.n, D);
  double eps = std::pow(std::pow(1.0 - alpha, 2.0 * p) /
                            (volfD * std::pow(c, 2.0 * p)),
                        1.0 / p);
  double kbar = integral_curvature(M, ms.lambda, p, M.L,
                                   CurvKind::type1_ricci, true)
                    .value;
  rep.add_input("epsilon", eps);
  rep.add_input("kbar", kbar);
  rep.add_check("averaged-deficiency-small", kbar <= eps * (1 + 1e-12),
                "kbar <= admissible epsilon");

  double volM = ball_volume(M, M.L);
  double worst = -1e300;
  rep.grid_label = "r";
  for (int j = 1; j <= 10; ++j) {
    double r = M.L * j / 10.0;
    rep.grid.push_back(r);
    double gap = alpha * model_volume(ms, M.n, r) / volfD -
                 ball_volume(M, r) / volM;
    worst = std::max(worst, gap);
  }
  rep.lhs = worst;  // max over r of alpha*volf(r)/volf(D) - volM(r)/vol(M)
  rep.rhs = 0.0;
  rep.finalize();
  return rep;
}

VerificationReport verify_cor3_8(const RotSymManifold& M, double p,
                                 double alpha, double r1, double r2,
                                 double R) {
  if (!(alpha > 0) || !(alpha < 1))
    fail(ErrorKind::bad_parameter, "alpha must lie in (0,1)");
  if (!(r1 > 0) || !(r1 < r2) || !(r2 <= R) || R > M.L * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "need 0 < r1 < r2 <= R <= L");
  VerificationReport rep;
  rep.theorem_id = TheoremId::local_comparison;
  int n = M.n;
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("alpha", alpha);
  rep.add_input("r1", r1);
  rep.add_input("r2", r2);
  rep.add_input("R", R);
  rep.add_check("p-range", p > n / 2.0, "p > n/2");
  double eps = std::pow((2 * p - n) / (2 * n * c2(n, p)), 2) *
               std::pow(1.0 - std::pow(alpha, 1.0 / (2 * p)), 2);
  double kbar = integral_curvature(M, RadialFunction::constant(0.0), p, R,
                                   CurvKind::type1_ricci, true)
                    .value;
  rep.add_input("epsilon", eps);
  rep.add_input("scaled-kbar", R * R * kbar);
  rep.add_check("scaled-deficiency-small", R * R * kbar < eps,
                "R^2 * averaged norm < epsilon");
  rep.lhs = alpha * std::pow(r1 / r2, n);
  rep.rhs = ball_volume(M, r1) / ball_volume(M, r2);
  rep.finalize();
  return rep;
}

VerificationReport verify_thm3_8(double k_curv, int n, double p, double L_N,
                                 double R) {
  if (n <= 2) fail(ErrorKind::bad_parameter, "tube bound needs n > 2");
  if (!(p > n - 1)) fail(ErrorKind::bad_parameter, "tube bound needs p > n-1");
  if (!(L_N > 0) || !(R >= 0))
    fail(ErrorKind::bad_parameter, "need L_N > 0 and R >= 0");
  VerificationReport rep;
  rep.theorem_id = TheoremId::tube_spaceform;
  rep.add_input("k", k_curv);
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("L_N", L_N);
  rep.add_input("R", R);
  rep.add_check("p-range", true, "p > n-1");
  if (R == 0.0) {
    rep.lhs = rep.rhs = 0.0;
    rep.finalize();
    return rep;
  }
  double kst = tube_integral_curvature_segment(k_curv, n, L_N,
                                               RadialFunction::constant(0.0),
                                               p, R,
                                               CurvKind::type2_sectional)
                   .value;
  double a = std::pow(L_N * sphere_measure(n - 1), 1.0 / (n - 2));
  double b = std::pow(c4(n, p) * std::pow(kst, p), 1.0 / (2 * p - 1));
  rep.add_input("k-star", kst);
  rep.add_input("a", a);
  rep.add_input("b", b);
  rep.lhs = spaceform_tube_volume(k_curv, n, L_N, R);
  if (b == 0.0) {
    rep.rhs = std::pow(a, n - 2) * std::pow(R, n - 1) / (n - 1);
  } else {
    rep.rhs = std::pow(a + b, n - 2) *
              integrate(
                  [&](double t) {
                    return std::pow(expm1_div(b, t), n - 2);
                  },
                  0.0, R, 1e-10);
  }
  rep.finalize();
  return rep;
}

VerificationReport verify_thm3_9(double k_curv, int n, double p, double L_N,
                                 double R, const RadialFunction& lambda,
                                 bool beta_consistent) {
  if (n <= 2) fail(ErrorKind::bad_parameter, "tube bound needs n > 2");
  if (!(p > n - 1)) fail(ErrorKind::bad_parameter, "tube bound needs p > n-1");
  if (!(L_N > 0) || !(R > 0))
    fail(ErrorKind::bad_parameter, "need L_N > 0 and R > 0");
  VerificationReport rep;
  rep.theorem_id = TheoremId::tube_general;
  rep.add_input("k", k_curv);
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("L_N", L_N);
  rep.add_input("R", R);
  rep.add_input("beta-consistent", beta_consistent ? "true" : "false");
  double lam_inf = lambda_min(lambda, 0.0, R);
  rep.add_input("lambda-inf", lam_inf);
  rep.add_check("p-range", true, "p > n-1");
  rep.add_check("bound-inf-nonpositive", lam_inf <= 1e-12);
  rep.lhs = spaceform_tube_volume(k_curv, n, L_N, R);
  if (lam_inf <= 1e-12) {
    double li = std::min(lam_inf, 0.0);
    double kst =
        tube_integral_curvature_segment(k_curv, n, L_N, lambda, p, R,
                                        CurvKind::type2_sectional)
            .value;
    rep.add_input("k-star", kst);
    rep.rhs = tube_bound_F(n, p, L_N, li, kst, R, beta_consistent);
    double other = tube_bound_F(n, p, L_N, li, kst, R, !beta_consistent);
    rep.notes.push_back(
        std::string("alternative linear-term exponent reading: rhs=") +
        format_double(other) + ", inequality " +
        (rep.lhs <= other + 1e-9 * (1 + std::abs(other)) ? "holds"
                                                         : "fails"));
  }
  rep.finalize();
  return rep;
}

VerificationReport verify_thm3_10(const RotSymManifold& M, double p, double R,
                                  double vol_Shat,
                                  const RadialFunction& lambda,
                                  bool beta_consistent) {
  double wn = sphere_measure(M.n);
  if (!(vol_Shat > 0) || vol_Shat > wn * (1 + 1e-12))
    fail(ErrorKind::bad_parameter,
         "directional measure must lie in (0, vol(S^{n-1})]");
  if (!(R > 0) || R > M.L * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "cone radius must lie in (0, L]");
  VerificationReport rep;
  rep.theorem_id = TheoremId::cone;
  rep.add_input("n", static_cast<double>(M.n));
  rep.add_input("p", p);
  rep.add_input("R", R);
  rep.add_input("vol-Shat", vol_Shat);
  rep.add_input("beta-consistent", beta_consistent ? "true" : "false");
  double lam_inf = lambda_min(lambda, 0.0, R);
  rep.add_input("lambda-inf", lam_inf);
  rep.add_check("p-range", p > M.n / 2.0, "p > n/2");
  rep.add_check("bound-inf-nonpositive", lam_inf <= 1e-12);
  rep.lhs = vol_Shat / wn * ball_volume(M, R);
  if (lam_inf <= 1e-12 && p > M.n / 2.0) {
    double li = std::min(lam_inf, 0.0);
    double k = integral_curvature(M, lambda, p, R, CurvKind::type1_ricci)
                   .value;
    rep.add_input("k-norm", k);
    rep.rhs = cone_bound_G(M.n, p, vol_Shat, li, k, R, beta_consistent);
    double other = cone_bound_G(M.n, p, vol_Shat, li, k, R, !beta_consistent);
    rep.notes.push_back(
        std::string("alternative linear-term exponent reading: rhs=") +
        format_double(other) + ", inequality " +
        (rep.lhs <= other + 1e-9 * (1 + std::abs(other)) ? "holds"
                                                         : "fails"));
  }
  rep.finalize();
  return rep;
}

VerificationReport verify_thm3_13(const RotSymManifold& M, double p,
                                  const RadialFunction& lambda, double t0,
                                  double R) {
  if (!(t0 > 0) || !(t0 < M.L))
    fail(ErrorKind::out_of_domain, "base sphere radius must lie in (0, L)");
  if (!(R > 0)) fail(ErrorKind::bad_parameter, "tube radius must be > 0");
  VerificationReport rep;
  rep.theorem_id = TheoremId::hypersurface_tube;
  int n = M.n;
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("t0", t0);
  rep.add_input("R", R);
  double lam_inf = lambda_min(lambda, 0.0, R);
  rep.add_input("lambda-inf", lam_inf);
  rep.add_check("p-range", p > std::max(n / 2.0, 1.0), "p > max(n/2, 1)");
  rep.add_check("bound-inf-negative", lam_inf < 0.0,
                "needs a strictly negative bound infimum");
  double lo = std::max(0.0, t0 - R);
  double hi = std::min(static_cast<double>(M.L), t0 + R);
  rep.lhs = annulus_volume(M, lo, hi);
  rep.notes.push_back("tube clipped to [" + format_double(lo) + ", " +
                      format_double(hi) + "]");
  if (lam_inf < 0.0 && p > std::max(n / 2.0, 1.0)) {
    double volN = sphere_area(M, t0);
    double H = sphere_mean_curvature(M, t0);
    double intH = volN * std::pow(std::abs(H), 2 * p - 1);
    double k = tube_integral_curvature_sphere(M, t0, lambda, p, R,
                                              CurvKind::type1_ricci)
                   .value;
    double root = c7(n, p) * std::sqrt(-lam_inf);
    rep.add_input("vol-N", volN);
    rep.add_input("H", H);
    rep.add_input("k-norm", k);
    rep.rhs = std::expm1(root * R) *
              (2.0 / root * volN +
               std::pow(n - 1.0, 2 * p - 1) / std::pow(root, 2 * p) * intH +
               std::pow((n - 1.0) * std::sqrt(-lam_inf), -p) * std::pow(k, p));
  }
  rep.finalize();
  return rep;
}

VerificationReport verify_thm3_15(const RotSymManifold& M, double p,
                                  const std::vector<double>& R_ladder,
                                  double s) {
  if (R_ladder.size() < 4)
    fail(ErrorKind::ladder_too_short, "radius ladder needs >= 4 rungs");
  for (size_t i = 0; i + 1 < R_ladder.size(); ++i)
    if (!(R_ladder[i] > 0) || !(R_ladder[i] < R_ladder[i + 1]))
      fail(ErrorKind::bad_parameter, "ladder must be positive increasing");
  if (R_ladder.back() > M.L * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "ladder exceeds the manifold domain");
  VerificationReport rep;
  rep.theorem_id = TheoremId::asymptotics;
  int n = M.n;
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("s", s);
  rep.grid_label = "R";
  rep.grid = R_ladder;

  auto zero = RadialFunction::constant(0.0);
  std::vector<double> vol, area, knorm;
  for (double R : R_ladder) {
    vol.push_back(ball_volume(M, R));
    area.push_back(sphere_area(M, R));
    knorm.push_back(
        integral_curvature(M, zero, p, R, CurvKind::type1_ricci).value);
  }
  size_t m = R_ladder.size();
  double kp = knorm[m - 2], kl = knorm[m - 1];
  bool bounded = kl <= 1e-12 || kl - kp <= 0.01 * (1 + kp);
  rep.add_check("norm-bounded", bounded,
                "flat-bound deficiency norm must stay bounded along the "
                "ladder (tail growth " +
                    format_double(kl - kp) + ")");
  bool claim2_applicable = s >= 0;
  if (claim2_applicable)
    rep.add_check("s-range", s < 1.0 / (2 * p), "s < 1/(2p)");

  double e = 1.0 / (2 * p);
  std::vector<double> q1, q2, q3;
  for (size_t i = 0; i < m; ++i) {
    q1.push_back(std::pow(vol[i], e) / R_ladder[i]);
    q2.push_back(area[i] / std::pow(vol[i], 1.0 - e));
    if (claim2_applicable) {
      double right = c8(n, p) * std::sqrt(knorm[i]) * std::pow(vol[i], s - e);
      q3.push_back(
          std::max(0.0, area[i] / std::pow(vol[i], 1.0 - s) - right));
    }
  }
  bool ok1 = limit_claim_ok(q1, 0.0) && limit_claim_ok(q2, 0.0);
  rep.notes.push_back("vol^{1/2p}/R tail: " + format_double(q1.back()));
  rep.notes.push_back("area/vol^{1-1/2p} tail: " + format_double(q2.back()));
  double worst =
      std::max(q1.back() - std::max(0.05 * q1.front(), 1e-9),
               q2.back() - std::max(0.05 * q2.front(), 1e-9));
  if (claim2_applicable) {
    bool ok2 = limit_claim_ok(q3, 0.0);
    rep.notes.push_back("weighted ratio excess tail: " +
                        format_double(q3.back()));
    worst = std::max(worst, q3.back() - std::max(0.05 * q3.front(), 1e-9));
    ok1 = ok1 && ok2;
  }
  rep.lhs = worst;  // worst tail overshoot beyond its allowance
  rep.rhs = 0.0;
  rep.finalize();
  if (rep.satisfied == Satisfied::yes && !ok1) rep.satisfied = Satisfied::no;
  return rep;
}

VerificationReport verify_thm4_1(const RotSymManifold& M, double p, double tau,
                                 double r1) {
  if (!(tau > 0)) fail(ErrorKind::bad_parameter, "tau must be > 0");
  if (!(r1 > 0) || r1 > M.L * (1 + 1e-12))
    fail(ErrorKind::out_of_domain, "r1 must lie in (0, L]");
  VerificationReport rep;
  rep.theorem_id = TheoremId::iso_local;
  int n = M.n;
  double wn = sphere_measure(n);
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("tau", tau);
  rep.add_input("r1", r1);
  rep.add_check("p-range", p > n / 2.0, "p > n/2");

  double eta = std::pow(ball_volume(M, r1) / (wn * std::pow(r1, n) / n),
                        -1.0 / n);
  double r2 = eta * r1 / (1 + tau);
  rep.add_input("eta", eta);
  rep.add_input("r2", r2);
  double window = r1 + 2 * r2;
  rep.add_check("norm-window", window <= M.L * (1 + 1e-12),
                "r1 + 2 r2 <= L");
  rep.add_check("pole-norm-proxy", true,
                "sup over centers of the deficiency norm approximated by the "
                "pole value (exact in rotational symmetry only at the pole)");
  if (!rep.hypotheses_ok()) {
    rep.finalize();
    return rep;
  }
  double ksup = integral_curvature(M, RadialFunction::constant(0.0), p,
                                   window, CurvKind::type1_ricci)
                    .value;
  double hyp_lhs = c6(n, p) * std::pow(r1, 2 * p - n) * std::pow(ksup, p);
  double hyp_rhs =
      wn * std::min(std::pow(tau, 2 * p - 1) * std::pow(eta, n - 2 * p),
                    (2 * p * (n - 1) / (n * (2 * p - 1))) * tau *
                        std::pow(eta, n) / std::pow(1 + tau + eta, 2 * p));
  rep.add_input("k-sup", ksup);
  rep.add_check("deficiency-smallness", hyp_lhs <= hyp_rhs,
                format_double(hyp_lhs) + " <= " + format_double(hyp_rhs));

  // candidate family: pole-centered balls of radius <= r2; the report's lhs
  // is the required lower bound, rhs the family's infimum
  double cand = 1e300;
  rep.grid_label = "r";
  for (int j = 1; j <= 16; ++j) {
    double r = r2 * j / 16.0;
    rep.grid.push_back(r);
    cand = std::min(cand, sphere_area(M, r) /
                              std::pow(ball_volume(M, r), (n - 1.0) / n));
  }
  rep.lhs = std::pow(2.0, (n - 1.0) / n) *
            std::pow(tau * eta / (1 + tau + eta), n + 1) *
            croke_iso_constant(n);
  rep.rhs = cand;
  rep.notes.push_back(
      "necessary-condition check on the radial candidate family; lhs is the "
      "required isoperimetric floor, rhs the family infimum");
  rep.finalize();
  return rep;
}

double isoperimetric_quantity_radial(const RotSymManifold& M, double p) {
  if (!M.closed)
    fail(ErrorKind::bad_parameter,
         "isoperimetric quantity needs a closed manifold");
  if (!(p > 0)) fail(ErrorKind::bad_parameter, "exponent must be > 0");
  double volM = ball_volume(M, M.L);
  // cap share is strictly increasing in r: bisect for the half-volume radius
  double lo = 0.0, hi = M.L;
  for (int i = 0; i < 200 && hi - lo > 1e-13 * M.L; ++i) {
    double mid = lo + (hi - lo) / 2;
    (ball_volume(M, mid) < volM / 2 ? lo : hi) = mid;
  }
  double r_half = lo + (hi - lo) / 2;
  double e = 1.0 / (2 * p);
  double best = 1e300;
  for (int j = 1; j <= 256; ++j) {
    double r = r_half * j / 256.0;
    best = std::min(best, sphere_area(M, r) /
                              std::pow(ball_volume(M, r), 1.0 - e));
  }
  return best * std::pow(volM, -e);
}

VerificationReport verify_thm4_4(const RotSymManifold& M, double p,
                                 const RadialFunction& lambda, double D) {
  if (!M.closed)
    fail(ErrorKind::bad_parameter, "ratio bound needs a closed manifold");
  if (!(D > 0)) fail(ErrorKind::bad_parameter, "diameter bound must be > 0");
  VerificationReport rep;
  rep.theorem_id = TheoremId::iso_ratio;
  int n = M.n;
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("D", D);
  double lam_inf = lambda_min(lambda, 0.0, D);
  rep.add_input("lambda-inf", lam_inf);
  rep.add_check("p-range", p > std::max(n / 2.0, 1.0), "p > max(n/2, 1)");
  rep.add_check("bound-inf-negative", lam_inf < 0.0);
  rep.add_check("diameter-bound", D >= M.L * (1 - 1e-12), "D >= L");
  if (!rep.hypotheses_ok()) {
    rep.finalize();
    return rep;
  }
  double volM = ball_volume(M, M.L);
  double root = c7(n, p) * std::sqrt(-lam_inf);
  double budget = volM / 2 / std::expm1(root * D);
  bool all_caps = true;
  double worst = -1e300;
  double c10v = c10(n, p, lam_inf, D);
  rep.add_input("c10", c10v);
  rep.grid_label = "cap-r";
  for (int j = 1; j <= 39; ++j) {
    double r = M.L * j / 40.0;
    rep.grid.push_back(r);
    double k = tube_integral_curvature_sphere(M, r, lambda, p, D,
                                              CurvKind::type1_ricci)
                   .value;
    double lhs441 =
        std::pow((n - 1.0) * std::sqrt(-lam_inf), -p) * std::pow(k, p);
    if (lhs441 > budget * (1 + 1e-12)) all_caps = false;
    double volc = ball_volume(M, r);
    double gap = c10v * std::pow(std::min(volc, volM - volc) / volM,
                                 1.0 - 1.0 / (2 * p)) -
                 sphere_area(M, r) / volM;
    worst = std::max(worst, gap);
  }
  rep.add_check("norm-budget-all-caps", all_caps,
                "hypersurface-tube deficiency within the volume budget for "
                "every cap");
  rep.lhs = worst;  // max over caps of bound - area/vol(M)
  rep.rhs = 0.0;
  rep.finalize();
  return rep;
}

ShortestGeodesicBound shortest_geodesic_bound(int n, double p,
                                              const RadialFunction& lambda,
                                              double w, double D,
                                              double epsilon) {
  if (n <= 2) fail(ErrorKind::bad_parameter, "length floor needs n > 2");
  if (!(p > n - 1))
    fail(ErrorKind::bad_parameter, "length floor needs p > n-1");
  if (!(w > 0) || !(D > 0) || !(epsilon >= 0))
    fail(ErrorKind::bad_parameter, "need w > 0, D > 0, epsilon >= 0");
  double lam_inf = std::min(lambda_min(lambda, 0.0, D), 0.0);
  if (lambda_min(lambda, 0.0, D) > 1e-12)
    fail(ErrorKind::bad_parameter, "bound function must be nonpositive");
  auto F = [&](double l) {
    return l == 0.0 && epsilon == 0.0
               ? 0.0
               : tube_bound_F(n, p, std::max(l, 0.0), lam_inf, epsilon, D);
  };
  ShortestGeodesicBound out;
  double f0 = epsilon == 0.0 ? 0.0 : F(0.0);
  if (f0 >= w) {
    out.trivial_zero = true;
    out.residual = f0 - w;
    return out;
  }
  double lo = 0.0, hi = 1.0;
  int guard = 0;
  while (F(hi) < w) {
    hi *= 2;
    if (++guard > 80)
      fail(ErrorKind::no_root, "volume floor unreachable by the tube bound");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1 + hi); ++i) {
    double mid = lo + (hi - lo) / 2;
    (F(mid) < w ? lo : hi) = mid;
  }
  out.delta = lo + (hi - lo) / 2;
  out.residual = std::abs(F(out.delta) - w);
  return out;
}

VerificationReport verify_thm5_3(const RotSymManifold& M, const ModelSpace& ms,
                                 double p, double K, double R, double alpha,
                                 double s_divider) {
  if (!(alpha > 0) || !(alpha < 1))
    fail(ErrorKind::bad_parameter, "alpha must lie in (0,1)");
  double end = std::min(static_cast<double>(M.L), ms.domain_end());
  if (!(s_divider > 0) || !(s_divider < R) || R > end * (1 + 1e-12) + 1e-12)
    fail(ErrorKind::out_of_domain, "need 0 < s < R <= min(L, l)");
  VerificationReport rep;
  rep.theorem_id = TheoremId::divider;
  int n = M.n;
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.add_input("K", K);
  rep.add_input("R", R);
  rep.add_input("alpha", alpha);
  rep.add_input("s", s_divider);
  rep.add_check("p-range", p > n / 2.0, "p > n/2");

  double k = integral_curvature(M, ms.lambda, p, R, CurvKind::type1_ricci)
                 .value;
  rep.add_input("k-norm", k);
  rep.add_check("deficiency-within-budget", k <= K * (1 + 1e-12) + 1e-12,
                "norm <= K");

  double volD1 = ball_volume(M, s_divider);
  double volD2 = annulus_volume(M, s_divider, R);
  double half = R / 2;
  double in1 = ball_volume(M, std::min(s_divider, half));
  double in2 = s_divider >= half ? 0.0 : annulus_volume(M, s_divider, half);
  bool sep1 = in1 <= alpha * volD1 + 1e-12;
  bool sep2 = in2 <= alpha * volD2 + 1e-12;
  rep.add_check("cap-separation", sep1 || sep2,
                "one side meets at most an alpha share of the half ball "
                "(side 1: " +
                    format_double(in1 / std::max(volD1, 1e-300)) +
                    ", side 2: " +
                    format_double(in2 / std::max(volD2, 1e-300)) + ")");

  double best = -1e300, best_t = 0.0;
  DividerConstants best_dc;
  rep.grid_label = "t";
  for (int j = 1; j <= 20; ++j) {
    double t = half * j / 21.0;
    rep.grid.push_back(t);
    auto dc = c13_c14(ms, n, p, K, R, t, alpha);
    double cand = dc.c13 * std::min(volD1, volD2) - dc.c14;
    if (cand > best) {
      best = cand;
      best_t = t;
      best_dc = dc;
    }
  }
  rep.add_input("t-opt", best_t);
  rep.add_input("c13", best_dc.c13);
  rep.add_input("c14", best_dc.c14);
  rep.lhs = best;
  rep.rhs = sphere_area(M, s_divider);
  if (best <= 0.0)
    rep.notes.push_back(
        "floor nonpositive at every grid radius: the bound is vacuous for "
        "this configuration");
  rep.finalize();
  return rep;
}

VerificationReport lemma2_2_report(const RotSymManifold& M,
                                   const ModelSpace& ms, double p,
                                   const std::vector<double>& r_pts) {
  if (r_pts.empty())
    fail(ErrorKind::bad_parameter, "derivative check needs sample radii");
  VerificationReport rep;
  rep.theorem_id = TheoremId::volume_ratio_derivative;
  int n = M.n;
  double wn = sphere_measure(n);
  rep.add_input("n", static_cast<double>(n));
  rep.add_input("p", p);
  rep.grid_label = "r";
  rep.grid = r_pts;
  rep.add_check("p-range", p > n / 2.0, "p > n/2");
  double end = std::min(static_cast<double>(M.L), ms.domain_end());
  double worst = -1e300;
  for (double r : r_pts) {
    double h = std::min({1e-4, 0.5 * r, 0.5 * (end - r)});
    if (!(h > 0)) fail(ErrorKind::out_of_domain, "sample radius at the edge");
    double dy = (ratio_y(M, ms, r + h) - ratio_y(M, ms, r - h)) / (2 * h);
    // 1e-8 suffices: the bound takes the 1/2p-th root of this and is
    // checked at 1e-7, while the model warp's interpolated curvature makes
    // tighter targets needlessly expensive
    double psi_int = wn * integrate(
                              [&](double t) {
                                if (t <= 0.0) return 0.0;
                                return std::pow(psi(M, ms, t), 2 * p) *
                                       std::pow(M.g.value(t), n - 1);
                              },
                              0.0, r, 1e-8);
    double bound = c1(ms, n, r) *
                   std::pow(ratio_y(M, ms, r), 1.0 - 1.0 / (2 * p)) *
                   std::pow(psi_int, 1.0 / (2 * p)) *
                   std::pow(model_volume(ms, n, r), -1.0 / (2 * p));
    worst = std::max(worst, dy - bound);
  }
  rep.lhs = worst;  // max over radii of d/dr ratio - derivative bound
  rep.rhs = 0.0;
  rep.notes.push_back(
      "finite differences (h <= 1e-4) against the derivative bound; "
      "tolerance widened to 1e-7 for the discretization error");
  rep.finalize(1e-7);
  return rep;
}

}  // namespace radcurv
