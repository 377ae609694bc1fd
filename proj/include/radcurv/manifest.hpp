#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radcurv/manifold.hpp"
#include "radcurv/model.hpp"

namespace radcurv {

// one run = one manifest: a flat sectioned key-value file with quoted
// expression strings.  sections and keys:
//   [manifold]  n, g (quoted expression) | builtin (euclidean, hyperbolic(a),
//               sphere, sphere(k)), L
//   [model]     lambda (quoted expression), T
//   [run]       theorems (comma list), p, R, r (comma lists), tol, seed
//   [output]    dir, json, csv
struct Manifest {
  int n = 3;
  std::string g_source;   // warp expression; empty when a builtin is chosen
  std::string builtin;    // builtin tag as written in the config
  std::string lambda_source = "0";
  double L = 0.0;  // 0 = family default (1e6 open, first warp zero closed)
  double T = 50.0;
  std::vector<double> p_grid{2.0};
  std::vector<double> R_grid{1.0};
  std::vector<double> r_grid;
  std::vector<std::string> theorems;
  double tol = 1e-9;
  std::uint64_t seed = 1;
  std::string out_dir;
  std::string json_name;
  std::string csv_name;
};

// all fields validated before any solve; every problem is collected and the
// whole list raised as one config_error diagnostic
Manifest parse_manifest(const std::string& text);
Manifest load_manifest(const std::string& path);  // io_error when unreadable

// the warp expression a builtin tag expands to (numbers in round-trip form)
std::string builtin_warp_source(const std::string& tag);

RotSymManifold manifest_manifold(const Manifest& m);
ModelSpace manifest_model(const Manifest& m);  // solve_warp of lambda over T

}  // namespace radcurv
