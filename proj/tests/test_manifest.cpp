#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "radcurv/errors.hpp"
#include "radcurv/manifest.hpp"

using namespace radcurv;

namespace {

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected a radcurv::Error");
  return ErrorKind::config_error;
}

template <typename F>
std::string message_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  FAIL("expected a radcurv::Error");
  return "";
}

}  // namespace

TEST_CASE("full config round-trips every section") {
  const char* text = R"cfg(# demo run
[manifold]
n = 4
g = "sinh(t)"   # warped product factor
L = 25

[model]
lambda = "-0.5/(t+1)"
T = 12

[run]
theorems = volume-ratio, bishop-gromov, heat-kernel
p = 2.5, 8
R = 0.5, 1.5
r = 0.25
tol = 1e-8
seed = 99

[output]
dir = results
json = run.json
csv = curves.csv
)cfg";
  Manifest m = parse_manifest(text);
  CHECK(m.n == 4);
  CHECK(m.g_source == "sinh(t)");
  CHECK(m.builtin.empty());
  CHECK(m.L == 25.0);
  CHECK(m.lambda_source == "-0.5/(t+1)");
  CHECK(m.T == 12.0);
  REQUIRE(m.theorems.size() == 3);
  CHECK(m.theorems[0] == "volume-ratio");
  CHECK(m.theorems[2] == "heat-kernel");
  REQUIRE(m.p_grid.size() == 2);
  CHECK(m.p_grid[1] == 8.0);
  REQUIRE(m.R_grid.size() == 2);
  CHECK(m.R_grid[0] == 0.5);
  REQUIRE(m.r_grid.size() == 1);
  CHECK(m.r_grid[0] == 0.25);
  CHECK(m.tol == 1e-8);
  CHECK(m.seed == 99);
  CHECK(m.out_dir == "results");
  CHECK(m.json_name == "run.json");
  CHECK(m.csv_name == "curves.csv");
}

TEST_CASE("missing keys fall back to defaults") {
  Manifest m = parse_manifest("[manifold]\ng = \"t\"\n");
  CHECK(m.n == 3);
  CHECK(m.lambda_source == "0");
  CHECK(m.L == 0.0);  // unset; manifest_manifold picks the horizon
  CHECK(m.T == 50.0);
  REQUIRE(m.p_grid.size() == 1);
  CHECK(m.p_grid[0] == 2.0);
  REQUIRE(m.R_grid.size() == 1);
  CHECK(m.R_grid[0] == 1.0);
  CHECK(m.r_grid.empty());
  CHECK(m.theorems.empty());
  CHECK(m.tol == 1e-9);
  CHECK(m.seed == 1);
}

TEST_CASE("builtin warp shorthand expands to expressions") {
  CHECK(builtin_warp_source("euclidean") == "t");
  CHECK(builtin_warp_source("hyperbolic") == "sinh(t)");
  CHECK(builtin_warp_source("hyperbolic(1)") == "sinh(t)");
  CHECK(builtin_warp_source("hyperbolic(0.5)") == "sinh(0.5*t)/0.5");
  CHECK(builtin_warp_source("sphere") == "sin(t)");
  CHECK(builtin_warp_source("sphere(1)") == "sin(t)");
  // sphere(k): curvature k, warp sin(sqrt(k) t)/sqrt(k)
  std::string s2 = builtin_warp_source("sphere(2)");
  CHECK(s2.find("sin(1.4142135623730951*t)") == 0);

  CHECK(kind_of([] { builtin_warp_source("euclidean(2)"); }) ==
        ErrorKind::config_error);
  CHECK(kind_of([] { builtin_warp_source("hyperbolic(0)"); }) ==
        ErrorKind::config_error);
  CHECK(kind_of([] { builtin_warp_source("sphere(-1)"); }) ==
        ErrorKind::config_error);
  CHECK(kind_of([] { builtin_warp_source("torus"); }) ==
        ErrorKind::config_error);
  CHECK(kind_of([] { builtin_warp_source("sphere(abc)"); }) ==
        ErrorKind::config_error);
}

TEST_CASE("builtin manifolds get sensible domains") {
  Manifest sph;
  sph.builtin = "sphere(2)";
  RotSymManifold S = manifest_manifold(sph);
  CHECK(S.closed);
  // default length reaches the antipode: pi / sqrt(k)
  CHECK(S.L == doctest::Approx(M_PI / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(S.g.value(S.L / 2) == doctest::Approx(1.0 / std::sqrt(2.0)));

  Manifest hyp;
  hyp.builtin = "hyperbolic";
  hyp.n = 2;
  RotSymManifold H = manifest_manifold(hyp);
  CHECK_FALSE(H.closed);
  CHECK(H.L == 1e6);
  CHECK(H.n == 2);

  Manifest expl;
  expl.builtin = "sphere";
  expl.L = 2.0;  // explicit L wins, shorter than the closed default
  CHECK(kind_of([&] { manifest_manifold(expl); }) == ErrorKind::bad_parameter);
  // a closed manifold must end where the warp vanishes; pi works
  expl.L = M_PI;
  RotSymManifold SE = manifest_manifold(expl);
  CHECK(SE.closed);
  CHECK(SE.L == M_PI);
}

TEST_CASE("model construction stamps the manifold dimension") {
  Manifest m = parse_manifest(
      "[manifold]\nn = 5\ng = \"t\"\n[model]\nlambda = \"-1\"\nT = 4\n");
  ModelSpace ms = manifest_model(m);
  CHECK(ms.n == 5);
  CHECK(ms.lambda.source() == "-1");
  CHECK(ms.horizon == 4.0);
  // lambda = -1 solves to sinh
  CHECK(ms.f.value(1.0) == doctest::Approx(std::sinh(1.0)).epsilon(1e-8));
}

TEST_CASE("every complaint is aggregated into one diagnostic") {
  const char* bad = R"cfg([manifold]
n = 1
g = sinh(t)
L = -3
[run]
p = 2, -1
bogus = 7
[nope]
x = 1
)cfg";
  std::string msg = message_of([&] { parse_manifest(bad); });
  CHECK(msg.find("line 2: n must be an integer in [2, 50]") !=
        std::string::npos);
  CHECK(msg.find("line 3: warp expression must be double-quoted") !=
        std::string::npos);
  CHECK(msg.find("line 4: L must be a positive number") != std::string::npos);
  CHECK(msg.find("line 6: p must be a comma list of positive numbers") !=
        std::string::npos);
  CHECK(msg.find("line 7: unknown key run.bogus") != std::string::npos);
  CHECK(msg.find("line 8: unknown section [nope]") != std::string::npos);
  CHECK(msg.find("manifold needs a warp") != std::string::npos);
  CHECK(kind_of([&] { parse_manifest(bad); }) == ErrorKind::config_error);
}

TEST_CASE("expression syntax errors surface their offset") {
  std::string msg =
      message_of([] { parse_manifest("[manifold]\ng = \"sinh(t\"\n"); });
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("offset") != std::string::npos);

  std::string msg2 = message_of(
      [] { parse_manifest("[manifold]\ng = \"t\"\n[model]\nlambda = \"1+\"\n"); });
  CHECK(msg2.find("lambda") != std::string::npos);
  CHECK(msg2.find("offset") != std::string::npos);
}

TEST_CASE("sloppy files are rejected with precise line numbers") {
  CHECK(message_of([] { parse_manifest("[manifold]\ng = \"t\"\ng = \"t\"\n"); })
            .find("line 3: duplicate key manifold.g") != std::string::npos);
  CHECK(message_of([] { parse_manifest("n = 3\n"); })
            .find("line 1") != std::string::npos);  // key before any section
  CHECK(message_of([] { parse_manifest("[manifold\ng = \"t\"\n"); })
            .find("unterminated section header") != std::string::npos);
  CHECK(message_of([] { parse_manifest("[manifold]\ng\n"); })
            .find("expected key = value") != std::string::npos);
  CHECK(message_of([] {
          parse_manifest("[manifold]\ng = \"t\"\n[run]\ntheorems = warp-core\n");
        }).find("unknown theorem 'warp-core'") != std::string::npos);
  CHECK(message_of([] {
          parse_manifest("[manifold]\ng = \"t\"\nbuiltin = euclidean\n");
        }).find("either g or builtin") != std::string::npos);
  CHECK(message_of([] {
          parse_manifest("[manifold]\ng = \"t\"\n[run]\ntol = 2\n");
        }).find("tol must be in (0, 1]") != std::string::npos);
  CHECK(message_of([] {
          parse_manifest("[manifold]\ng = \"t\"\n[run]\nseed = -4\n");
        }).find("seed") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored, quotes protect '#'") {
  const char* text =
      "# leading comment\n"
      "\n"
      "[manifold]  # trailing\n"
      "g = \"sinh(t)\"  # the warp\n"
      "\n"
      "[run]\n"
      "p = 2  # just one exponent\n";
  Manifest m = parse_manifest(text);
  CHECK(m.g_source == "sinh(t)");
  REQUIRE(m.p_grid.size() == 1);
  CHECK(m.p_grid[0] == 2.0);
}

TEST_CASE("files load from disk and missing paths are io errors") {
  const char* path = "manifest_roundtrip.cfg";
  {
    std::ofstream out(path);
    out << "[manifold]\nn = 2\nbuiltin = hyperbolic\n";
  }
  Manifest m = load_manifest(path);
  CHECK(m.n == 2);
  CHECK(m.builtin == "hyperbolic");
  std::remove(path);

  CHECK(kind_of([] { load_manifest("no/such/file.cfg"); }) ==
        ErrorKind::io_error);
}
