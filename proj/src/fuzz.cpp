#include <cmath>
#include <string>

#include "radcurv/comparison.hpp"
#include "radcurv/constants.hpp"
#include "radcurv/errors.hpp"
#include "radcurv/rng.hpp"

namespace radcurv {

namespace {

std::string warp_source(double a2, double a3, double a4) {
  return "t*(1+" + format_double(a2) + "*t^2/2+" + format_double(a3) +
         "*t^3/6+" + format_double(a4) + "*t^4/24)";
}

std::string bound_source(double b0, double b1) {
  return "-(" + format_double(b0) + "+" + format_double(b1) + "*t^2)";
}

void stamp(VerificationReport& rep, std::uint64_t seed, int case_id) {
  rep.add_input("seed", format_double(static_cast<double>(seed)));
  rep.add_input("case", static_cast<double>(case_id));
}

}  // namespace

std::vector<VerificationReport> fuzz_suite(std::uint64_t seed, int n_cases,
                                           const FuzzParams& params) {
  if (n_cases < 0) fail(ErrorKind::bad_parameter, "case count must be >= 0");
  SplitMix64 rng(seed);
  std::vector<VerificationReport> out;
  const double L = 2.6;
  for (int idx = 0; idx < n_cases; ++idx) {
    // draw everything unconditionally so case parameters never shift
    const double a2 = rng.uniform(-params.amp, params.amp);
    const double a3 = rng.uniform(-params.amp, params.amp);
    const double a4 = rng.uniform(-params.amp, params.amp);
    const double b0 = rng.uniform(0.0, params.bmax);
    const double b1 = rng.uniform(0.0, params.bmax);
    const int n = 2 + static_cast<int>(rng.below(3));
    const double p = rng.below(2) == 0 ? n / 2.0 + 0.5 : 2.0 * n;
    const double R = rng.uniform(0.5, 2.5);
    const double r = R * rng.uniform(0.1, 0.4);
    const double vol_frac = rng.uniform(0.3, 1.0);

    if (idx % 17 == 13) {
      // positive bound beyond the model's critical radius: indeterminate
      auto M = make_manifold(n, RadialFunction::from_source("sinh(t)"), L);
      auto ms = solve_warp(RadialFunction::constant(1.0), params.T);
      auto rep = verify_thm2_1(M, ms, p, 0.3, 2.0);
      stamp(rep, seed, idx);
      out.push_back(std::move(rep));
      continue;
    }

    auto lam = RadialFunction::from_source(bound_source(b0, b1));
    auto ms = solve_warp(lam, params.T);

    if (idx % 10 == 7) {
      // equality witness: the manifold warped by the model's own profile
      auto M = make_manifold(n, model_warp_function(ms), L);
      auto rep = verify_thm2_1(M, ms, p, r, R);
      stamp(rep, seed, idx);
      out.push_back(std::move(rep));
      std::vector<double> grid;
      for (int j = 2; j <= 8; ++j) grid.push_back(R * j / 8.0);
      auto bg = verify_bishop_gromov(M, ms, grid);
      stamp(bg, seed, idx);
      out.push_back(std::move(bg));
      continue;
    }

    auto M =
        make_manifold(n, RadialFunction::from_source(warp_source(a2, a3, a4)),
                      L);
    auto rep = verify_thm2_1(M, ms, p, r, R);
    stamp(rep, seed, idx);
    out.push_back(std::move(rep));

    auto fd = lemma2_2_report(M, ms, p, {0.4 * R, 0.7 * R, R});
    stamp(fd, seed, idx);
    out.push_back(std::move(fd));

    switch (idx % 4) {
      case 0: {
        auto r6 = verify_cor3_6(M, ms, p, L, 0.5);
        stamp(r6, seed, idx);
        out.push_back(std::move(r6));
        break;
      }
      case 1: {
        auto r8 = verify_cor3_8(M, p, 0.9, r, 2 * r, R);
        stamp(r8, seed, idx);
        out.push_back(std::move(r8));
        break;
      }
      case 2: {
        auto rc = verify_thm3_10(M, p, R, vol_frac * sphere_measure(n), lam);
        stamp(rc, seed, idx);
        out.push_back(std::move(rc));
        break;
      }
      default: {
        double k =
            integral_curvature(M, lam, p, R, CurvKind::type1_ricci).value;
        auto rd =
            verify_thm5_3(M, ms, p, 1.01 * k + 1e-9, R, 0.2, 0.75 * R);
        stamp(rd, seed, idx);
        out.push_back(std::move(rd));
        break;
      }
    }

    if (b0 > 0.005) {
      auto rt = verify_thm3_13(M, p, lam, 1.3, 0.6);
      stamp(rt, seed, idx);
      out.push_back(std::move(rt));
    }
  }
  return out;
}

}  // namespace radcurv
