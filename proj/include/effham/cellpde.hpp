#pragma once

// Large-time numerical effective Hamiltonian: march u_t + H(p + Du) + V - d Lap u = 0
// on the periodic grid from u = 0 and read off the decay rate of u.

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "effham/ham1d.hpp"
#include "effham/potential.hpp"

namespace effham {

enum class NumericalFlux {
  lax_friedrichs,        // one viscosity coefficient per axis over the sampled gradient range
  local_lax_friedrichs,  // coefficient per node over [min(q-,q+), max(q-,q+)]
  godunov,
};

struct CellOptions {
  int N = 400;
  double T = 60.0;
  double d = 0.0;
  NumericalFlux flux = NumericalFlux::godunov;
  bool estimate_error = true;  // second solve at 2N
  double drift_tol = 1e-3;
  double T_max = 960.0;
};

/// Periodic nodal field of the evolving solution; node N is node 0.
struct GridSolution {
  int dim = 1;
  int N = 0;
  double dt = 0.0;
  double time = 0.0;
  std::vector<double> field;
};

struct NumericEstimate {
  double value = 0.0;
  double error = 0.0;  // 2 |est(N) - est(2N)| when requested, else the time drift
  double drift = 0.0;  // change of the one-unit window average between the last two windows
  double T_used = 0.0;
  GridSolution grid;
};

/// Separable Hamiltonian H(q1, q2) = H1(q1) + H2(q2).
struct Hamiltonian2D {
  Hamiltonian1D axis1;
  Hamiltonian1D axis2;
  double operator()(double q1, double q2) const { return axis1.value(q1) + axis2.value(q2); }
};

/// coef * |q|^2
Hamiltonian2D quadratic_2d(double coef);

NumericEstimate effective_H_numeric(const Hamiltonian1D& H, const Potential& V, double p,
                                    const CellOptions& opt = {});

NumericEstimate effective_H_numeric_2d(const Hamiltonian2D& H, const std::function<double(double, double)>& V,
                                       std::array<double, 2> p, const CellOptions& opt = {});
NumericEstimate effective_H_numeric_2d(const Hamiltonian2D& H, const FourierPotential& V,
                                       std::array<double, 2> p, const CellOptions& opt = {});

/// One explicit step of the 1D scheme; exposed for the monotonicity checks.
std::vector<double> cell_step_1d(std::span<const double> u, std::span<const double> v_nodes,
                                 const Hamiltonian1D& H, double p, double d, double dt,
                                 NumericalFlux flux, double lf_alpha);

/// Largest stable dt for the 1D scheme given the slope bound alpha.
double stable_dt(double dx, double alpha, double d);

}  // namespace effham
