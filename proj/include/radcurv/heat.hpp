#pragma once

#include <vector>

#include "radcurv/comparison.hpp"
#include "radcurv/manifold.hpp"
#include "radcurv/model.hpp"
#include "radcurv/spectral.hpp"

namespace radcurv {

enum class HeatBc { dirichlet, neumann };
const char* heat_bc_name(HeatBc bc);

// trajectory of the radial heat equation du/dtau = u'' + (n-1)(g'/g) u' on
// B(q,R), discretized on the shared flux-form grid; values[j][i] = u at cell
// i and time times[j]
struct HeatSolution {
  int n = 0;
  HeatBc bc = HeatBc::dirichlet;
  RadialGrid grid;
  std::vector<double> times;                // tau_0 = 0 .. tau_K = T_heat
  std::vector<std::vector<double>> values;  // one row per recorded time
  std::vector<double> mass;                 // w_n h sum b_i u_i per time

  // piecewise-linear read of the recorded row closest to tau
  const std::vector<double>& at_time(double tau) const;
};

// Crank-Nicolson with time step = the spatial step (both errors order 2);
// the first step runs as two backward-Euler half-steps so rough data cannot
// ring. u0 is sampled at cell centers.
HeatSolution solve_radial_heat(const RotSymManifold& M, double R, HeatBc bc,
                               const RadialFunction& u0, double T_heat,
                               int grid_size);

// wrap cell-center values into a piecewise-linear radial profile: flat across
// the pole; past the last center a Dirichlet profile drops linearly to zero at
// R while a Neumann one stays flat
RadialFunction cell_profile(const RadialGrid& grid, std::vector<double> cells,
                            HeatBc bc);

// solution at time tau of the pole-concentrated unit-mass bump (standard
// deviation two cells). tau must clear 10 time steps; earlier times still
// see the mollified delta, not the kernel.
RadialFunction heat_kernel(const RotSymManifold& M, double R, HeatBc bc,
                           double tau, int grid_size);

// pointwise kernel comparison on the (cell, tau) lattice: a model with
// lambda below the radial Ricci bound gives H >= H_lower, one with lambda
// above the radial sectional bound gives H <= H_upper. Null pointer skips a
// side; at least one side is required. Dirichlet walls on both kernels.
VerificationReport verify_thm6_1(const RotSymManifold& M,
                                 const ModelSpace* ms_lower,
                                 const ModelSpace* ms_upper, double r0,
                                 const std::vector<double>& tau_grid);

}  // namespace radcurv
