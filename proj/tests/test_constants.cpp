#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "radcurv/constants.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/manifold.hpp"
#include "radcurv/model.hpp"

using namespace radcurv;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("sphere measures") {
  CHECK(sphere_measure(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(sphere_measure(2) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(sphere_measure(3) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
  CHECK(sphere_measure(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-14));
  CHECK(sphere_measure(5) == doctest::Approx(26.31894506957162).epsilon(1e-13));
  CHECK_THROWS_AS(sphere_measure(0), Error);
}

TEST_CASE("volume ratio constant c1") {
  for (int n : {2, 3, 4}) {
    auto flat = space_form(0.0, n);
    CHECK(c1(flat, n, 0.5) == doctest::Approx(double(n)).epsilon(1e-9));
    CHECK(c1(flat, n, 2.0) == doctest::Approx(double(n)).epsilon(1e-9));
  }
  auto flat2 = space_form(0.0, 2);
  CHECK(c1(flat2, 2, 0.0) == doctest::Approx(2.0).epsilon(1e-14));

  auto hyp = space_form(-1.0, 2);
  const double pin = std::sinh(1.0) / (std::cosh(1.0) - 1.0);  // 2.163953413738653
  CHECK(c1(hyp, 2, 1.0) == doctest::Approx(pin).epsilon(1e-9));

  // independent scan oracle: trapezoid prefix on a fine grid
  {
    const int m = 20000;
    const double r = 1.0;
    double acc = 0.0, best = 0.0, prev = std::sinh(0.0);
    for (int i = 1; i <= m; ++i) {
      const double t = r * i / m;
      const double ft = std::sinh(t);
      acc += 0.5 * (prev + ft) * (r / m);
      prev = ft;
      best = std::max(best, t * ft / acc);
    }
    CHECK(c1(hyp, 2, 1.0) == doctest::Approx(best).epsilon(1e-5));
  }

  // nondecreasing in r when the model curvature is nonpositive
  const double a = c1(hyp, 2, 0.5);
  const double b = c1(hyp, 2, 1.0);
  const double c = c1(hyp, 2, 2.0);
  CHECK(a <= b + 1e-12);
  CHECK(b <= c + 1e-12);

  // positively curved model: the ratio peaks at the pole limit n
  auto sph = space_form(1.0, 2);
  CHECK(c1(sph, 2, 1.0) == doctest::Approx(2.0).epsilon(1e-6));
  CHECK_THROWS_AS(c1(sph, 2, 4.0), Error);  // beyond the model domain
  CHECK_THROWS_AS(c1(flat2, 1, 1.0), Error);
}

TEST_CASE("Hoelder constant c2") {
  CHECK(c2(2, 2.0) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK(c2(3, 2.0) == doctest::Approx(36.0).epsilon(1e-13));
  CHECK_THROWS_AS(c2(2, 1.0), Error);
  CHECK_THROWS_AS(c2(4, 2.0), Error);
}

TEST_CASE("comparison constant c_main") {
  auto flat = space_form(0.0, 2);
  // closed form for the flat model: vol = pi s^2, so the integral is
  // pi^{-1/4} 2 sqrt(R) and c = (1/4) * 2 * 2.25 * pi^{-1/4} * 2 sqrt(R)
  for (double R : {1.0, 2.5}) {
    const double oracle =
        0.25 * 2.0 * 2.25 * std::pow(kPi, -0.25) * 2.0 * std::sqrt(R);
    CHECK(c_main(flat, 2, 2.0, R) == doctest::Approx(oracle).epsilon(1e-6));
  }
  CHECK(c_main(flat, 2, 2.0, 1.0) ==
        doctest::Approx(1.6900324750461206).epsilon(1e-6));

  auto hyp = space_form(-1.0, 2);
  const double r1 = c_main(hyp, 2, 2.0, 0.5);
  const double r2 = c_main(hyp, 2, 2.0, 1.0);
  const double r3 = c_main(hyp, 2, 2.0, 2.0);
  CHECK(r1 <= r2 + 1e-12);
  CHECK(r2 <= r3 + 1e-12);
  CHECK(r1 > 0.0);

  auto flat3 = space_form(0.0, 3);
  CHECK(std::isfinite(c_main(flat3, 3, 1.6, 1.0)));
  CHECK_THROWS_AS(c_main(flat3, 3, 1.5, 1.0), Error);  // p = n/2 exactly
  auto sph = space_form(1.0, 2);
  CHECK_THROWS_AS(c_main(sph, 2, 2.0, 4.0), Error);
}

TEST_CASE("closed-form constants c4..c10") {
  CHECK(c4(3, 3.0) == doctest::Approx(581.0185185185185).epsilon(1e-12));
  CHECK(c5(3, 3.0) == doctest::Approx(4.0 * 581.0185185185185).epsilon(1e-12));
  CHECK_THROWS_AS(c4(2, 3.0), Error);
  CHECK_THROWS_AS(c4(3, 2.0), Error);  // needs p > n-1

  CHECK(c6(2, 2.0) == doctest::Approx(1.125).epsilon(1e-14));
  CHECK(c6(3, 2.0) == doctest::Approx(2.25).epsilon(1e-14));
  CHECK_THROWS_AS(c6(3, 1.5), Error);

  CHECK(c7(3, 2.0) == doctest::Approx(std::sqrt(6.0)).epsilon(1e-14));
  CHECK(c7(2, 2.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));

  CHECK(c8(2, 2.0) == doctest::Approx(1.2778862084925449).epsilon(1e-12));
  CHECK(c8(2, 50.0) == doctest::Approx(1.0119266989494382).epsilon(1e-12));
  CHECK(std::abs(c8(2, 1000.0) - 1.0) <= 0.01);  // large-p limit is n-1
  CHECK(std::abs(c8(3, 1000.0) - 2.0) <= 0.01);

  CHECK(c9(2, 2.0, 1.0) == doctest::Approx(6.75).epsilon(1e-13));
  CHECK_THROWS_AS(c9(2, 2.0, 0.0), Error);

  CHECK(c10(2, 2.0, -1.0, 1.0) ==
        doctest::Approx(0.12740253472833496).epsilon(1e-12));
  CHECK_THROWS_AS(c10(2, 2.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(c10(2, 2.0, -1.0, 0.0), Error);

  // finiteness sweep over the admissible ranges
  for (int n = 2; n <= 6; ++n) {
    for (double p : {0.5 * n + 0.51, 0.5 * n + 2.0, 2.0 * n + 0.5}) {
      CHECK(std::isfinite(c2(n, p)));
      CHECK(std::isfinite(c6(n, p)));
      CHECK(std::isfinite(c7(n, p)));
      CHECK(std::isfinite(c8(n, p)));
      CHECK(std::isfinite(c9(n, p, 0.7)));
      CHECK(c2(n, p) > 0.0);
      CHECK(c6(n, p) > 0.0);
    }
    if (n > 2)
      for (double p : {n - 0.5, n + 1.0, 2.0 * n + 0.5})
        CHECK(std::isfinite(c4(n, p)));
  }
}

TEST_CASE("delta exponents") {
  CHECK(delta_exponent(3, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(delta_hat_exponent(3, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // the composite exponents collapse to (2p-1)/2p in both families
  for (int n : {3, 4, 5}) {
    for (double p : {n - 0.5, double(n), 2.0 * n}) {
      const double dl = delta_exponent(n, p);
      const double dh = delta_hat_exponent(n, p);
      CHECK((n - 2.0) / (n - 1.0 - dl) ==
            doctest::Approx((2.0 * p - 1.0) / (2.0 * p)).epsilon(1e-13));
      CHECK((n - 1.0) / (n - dh) ==
            doctest::Approx((2.0 * p - 1.0) / (2.0 * p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("guarded exponential ratio") {
  CHECK(expm1_div(0.0, 3.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(expm1_div(2.0, 3.0) ==
        doctest::Approx(std::expm1(6.0) / 2.0).epsilon(1e-14));
  // branch switch at |b| = 1e-8 moves the value by at most O(t^2 db)
  const double below = expm1_div(0.99e-8, 1.0);
  const double above = expm1_div(1.01e-8, 1.0);
  CHECK(std::abs(above - below) < 2e-10);
  CHECK(expm1_div(-3.0, 1.0) ==
        doctest::Approx(std::expm1(-3.0) / -3.0).epsilon(1e-14));
}

TEST_CASE("segment tube volume bound") {
  // flat branch agrees with the exact flat tube volume
  for (int n : {3, 4, 5}) {
    const double direct = tube_bound_F(n, double(n), 2.0, 0.0, 0.0, 1.3);
    const double oracle = spaceform_tube_volume(0.0, n, 2.0, 1.3);
    CHECK(direct == doctest::Approx(oracle).epsilon(1e-9));
  }
  // vanishing norm joins the flat branch continuously
  {
    const double at0 = tube_bound_F(3, 3.0, 2.0, 0.0, 0.0, 1.3);
    const double near0 = tube_bound_F(3, 3.0, 2.0, 0.0, 1e-25, 1.3);
    CHECK(near0 == doctest::Approx(at0).epsilon(1e-9));
  }
  // negatively curved budget dominates the hyperbolic tube
  {
    const double bound = tube_bound_F(4, 4.0, 2.0, -1.0, 0.0, 1.0);
    CHECK(bound == doctest::Approx(762.741895902361).epsilon(1e-9));
    CHECK(bound >= spaceform_tube_volume(-1.0, 4, 2.0, 1.0));
    CHECK(tube_bound_F(4, 4.0, 2.0, -1.0, 0.5, 1.0) ==
          doctest::Approx(792.8127115554375).epsilon(1e-9));
  }
  // both exponent readings of the linear term stay finite and differ
  {
    const double cons = tube_bound_F(4, 4.0, 2.0, -1.0, 0.5, 1.0, true);
    const double literal = tube_bound_F(4, 4.0, 2.0, -1.0, 0.5, 1.0, false);
    CHECK(std::isfinite(cons));
    CHECK(std::isfinite(literal));
    CHECK(cons != literal);
  }
  // monotone in each of L_N, the norm, and R
  for (double lam : {0.0, -0.7}) {
    double prev = -1.0;
    for (int i = 0; i <= 8; ++i) {
      const double v = tube_bound_F(3, 2.5, 0.25 * i, lam, 0.4, 1.0);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
    prev = -1.0;
    for (int i = 0; i <= 8; ++i) {
      const double v = tube_bound_F(4, 4.0, 2.0, lam, 0.3 * i, 1.0);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
    prev = -1.0;
    for (int i = 1; i <= 8; ++i) {
      const double v = tube_bound_F(4, 4.0, 2.0, lam, 0.9, 0.3 * i);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
  }
  // joint decay ladder: bound -> 0 as both the length and the norm shrink
  {
    double prev = tube_bound_F(4, 4.0, 1.0, 0.0, 1.0, 1.5);
    const double first = prev;
    for (int j = 1; j <= 13; ++j) {
      const double v =
          tube_bound_F(4, 4.0, std::pow(2.0, -j), 0.0, std::pow(2.0, -j), 1.5);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev <= 1e-6 * first);
  }
  CHECK_THROWS_AS(tube_bound_F(2, 4.0, 1.0, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(tube_bound_F(3, 2.0, 1.0, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(tube_bound_F(3, 3.0, 1.0, 0.1, 0.0, 1.0), Error);
  CHECK_THROWS_AS(tube_bound_F(3, 3.0, 1.0, 0.0, -0.1, 1.0), Error);
}

TEST_CASE("cone volume bound") {
  const double w3 = sphere_measure(3);
  // flat full cone is exactly the flat ball
  CHECK(cone_bound_G(3, 2.0, w3, 0.0, 0.0, 1.7) ==
        doctest::Approx(w3 * std::pow(1.7, 3) / 3.0).epsilon(1e-12));
  CHECK(cone_bound_G(3, 2.0, 0.5 * w3, 0.0, 0.0, 1.7) ==
        doctest::Approx(0.5 * w3 * std::pow(1.7, 3) / 3.0).epsilon(1e-12));
  // vanishing norm joins the flat branch continuously
  {
    const double at0 = cone_bound_G(3, 2.0, w3, 0.0, 0.0, 1.7);
    const double near0 = cone_bound_G(3, 2.0, w3, 0.0, 1e-25, 1.7);
    CHECK(near0 == doctest::Approx(at0).epsilon(1e-9));
  }
  // negatively curved budget dominates the hyperbolic ball
  {
    const double bound = cone_bound_G(3, 2.0, w3, -1.0, 0.0, 1.0);
    CHECK(bound == doctest::Approx(35.730991649129976).epsilon(1e-9));
    const double ball = 2.0 * kPi * (std::sinh(1.0) * std::cosh(1.0) - 1.0);
    CHECK(bound >= ball);
    CHECK(cone_bound_G(3, 2.0, w3, -1.0, 0.0, 1.0, false) ==
          doctest::Approx(36.74279742034146).epsilon(1e-9));
  }
  CHECK(std::isfinite(cone_bound_G(2, 1.5, sphere_measure(2), -0.25, 0.1, 2.0)));
  // monotone in each of vol_Shat, the norm, and R
  for (double lam : {0.0, -0.7}) {
    double prev = -1.0;
    for (int i = 0; i <= 8; ++i) {
      const double v = cone_bound_G(3, 2.0, 0.5 * i, lam, 0.4, 1.0);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
    prev = -1.0;
    for (int i = 0; i <= 8; ++i) {
      const double v = cone_bound_G(4, 2.5, 2.0, lam, 0.3 * i, 1.0);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
    prev = -1.0;
    for (int i = 1; i <= 8; ++i) {
      const double v = cone_bound_G(4, 2.5, 2.0, lam, 0.9, 0.3 * i);
      CHECK(v >= prev * (1.0 - 1e-10) - 1e-13);
      prev = v;
    }
  }
  // joint decay ladder
  {
    double prev = cone_bound_G(3, 2.0, 1.0, -0.5, 1.0, 1.5);
    const double first = prev;
    for (int j = 1; j <= 13; ++j) {
      const double v = cone_bound_G(3, 2.0, std::pow(2.0, -j), -0.5,
                                    std::pow(2.0, -j), 1.5);
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev <= 0.01 * first);
  }
  CHECK_THROWS_AS(cone_bound_G(3, 1.5, 1.0, 0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(cone_bound_G(3, 2.0, 1.0, 0.1, 0.0, 1.0), Error);
}

TEST_CASE("divider constants") {
  auto flat = space_form(0.0, 2);
  // flat model, R=2, t=0.5: the volume ratios are exact polynomials
  auto dc = c13_c14(flat, 2, 2.0, 0.0, 2.0, 0.5, 0.1);
  CHECK(dc.alpha1 == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(dc.alpha2 == 0.0);
  CHECK(dc.c14 == 0.0);
  CHECK(dc.c13 == doctest::Approx(0.02122065907891938).epsilon(1e-9));
  CHECK(dc.t == 0.5);

  // the defect constant grows with the curvature budget (~ sqrt scaling)
  auto low = c13_c14(flat, 2, 2.0, 1e-10, 2.0, 0.5, 0.1);
  auto mid = c13_c14(flat, 2, 2.0, 1e-2, 2.0, 0.5, 0.1);
  auto high = c13_c14(flat, 2, 2.0, 1.0, 2.0, 0.5, 0.1);
  CHECK(low.c14 > 0.0);
  CHECK(low.c14 < mid.c14);
  CHECK(mid.c14 < high.c14);
  CHECK(low.c14 < 1e-3);
  CHECK(low.c13 == doctest::Approx(dc.c13).epsilon(1e-12));

  // a large cap share makes the main constant negative (vacuous bound)
  auto vac = c13_c14(flat, 2, 2.0, 0.0, 2.0, 0.5, 0.5);
  CHECK(vac.c13 < 0.0);

  auto hyp = space_form(-1.0, 3);
  auto hy = c13_c14(hyp, 3, 2.0, 0.3, 2.0, 0.4, 0.05);
  CHECK(std::isfinite(hy.c13));
  CHECK(hy.alpha1 > 0.0);
  CHECK(hy.c14 > 0.0);

  CHECK_THROWS_AS(c13_c14(flat, 2, 2.0, 0.0, 2.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(c13_c14(flat, 2, 2.0, 0.0, 2.0, 0.5, 1.0), Error);
  CHECK_THROWS_AS(c13_c14(flat, 2, 2.0, -1.0, 2.0, 0.5, 0.1), Error);
}

TEST_CASE("euclidean isoperimetric constants") {
  auto iso2 = iso_euclidean(2);
  CHECK(iso2.C_I == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(1e-14));
  CHECK(iso2.C_S == 0.0);
  // ball family oracle: area / vol^{(n-1)/n} is scale invariant
  for (double r : {0.3, 1.0, 2.7}) {
    const double ratio = 2.0 * kPi * r / std::sqrt(kPi * r * r);
    CHECK(iso2.C_I == doctest::Approx(ratio).epsilon(1e-13));
  }
  auto iso3 = iso_euclidean(3);
  CHECK(iso3.C_I == doctest::Approx(4.835975862049408).epsilon(1e-12));
  {
    const double w3 = sphere_measure(3);
    const double ratio = w3 / std::pow(w3 / 3.0, 2.0 / 3.0);
    CHECK(iso3.C_I == doctest::Approx(ratio).epsilon(1e-13));
  }
  // Sobolev relation identity
  for (int n : {3, 4, 5}) {
    auto iso = iso_euclidean(n);
    const double lhs = iso.C_S * iso.C_I * iso.C_I;
    const double rhs = 4.0 * std::pow((n - 1.0) / (n - 2.0), 2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
  CHECK_THROWS_AS(iso_euclidean(1), Error);

  CHECK(croke_iso_constant(2) ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(croke_iso_constant(3) ==
        doctest::Approx(1.7205080276561995).epsilon(1e-12));
  // the chord-counting constant sits below the ball-extremal one
  for (int n : {2, 3, 4})
    CHECK(croke_iso_constant(n) < iso_euclidean(n).C_I);
}
