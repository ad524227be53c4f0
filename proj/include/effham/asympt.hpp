#pragma once

// Fourier transport solves Q.Dv = rhs and the coefficients of the large-momentum
// expansion Hbar(lambda Q) ~ H(lambda Q) + a1 + a2/lambda^2.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "effham/curve.hpp"
#include "effham/potential.hpp"

namespace effham {

/// Q with |Q.k| >= C/|k|^alpha verified for 0 < |k|_inf <= K_checked (|k| Euclidean).
struct DiophantineVector {
  std::vector<double> Q;
  double C = 0.0;
  double alpha = 0.0;
  int K_checked = 0;

  int dim() const { return static_cast<int>(Q.size()); }
  double dot(const Wavevector& k) const;
};

/// preset: "golden" ((1, phi) in 2D, (1, phi, phi^2) in 3D) or "sqrt-primes" ((sqrt2, sqrt3, sqrt5) truncated).
/// Throws precondition_error for n outside {1,2,3} or an unknown preset, domain_error if degenerate.
DiophantineVector make_diophantine(int n, const std::string& preset, int K = 50);

/// Fits C over |k|_inf <= K for an arbitrary Q; alpha = n (0 in one dimension).
DiophantineVector make_diophantine(std::vector<double> Q, int K = 50);

/// Solves factor * Q.Dv = rhs mode by mode: v_k = rhs_k / (factor 2 pi i Q.k), v_0 = 0.
FourierPotential solve_transport(const DiophantineVector& Q, const FourierPotential& rhs, double factor = 1.0);

/// factor * Q.Dv evaluated from the spectrum of v.
FourierPotential directional_derivative(const DiophantineVector& Q, const FourierPotential& v, double factor = 1.0);
FourierPotential laplacian(const FourierPotential& v);
/// |Dv|^2 as a spectrum (exact convolution of the truncated data).
FourierPotential gradient_square(const FourierPotential& v);

struct ExpansionCoeffs {
  double a1 = 0.0;
  double a2 = 0.0;
  std::vector<FourierPotential> correctors;  // v1 (inviscid) or v1, v2, v3 (viscous)
};

/// a1 = mean V, Q.Dv1 = a1 - V, a2 = 1/2 int |Dv1|^2.
ExpansionCoeffs inviscid_coeffs(const FourierPotential& V, const DiophantineVector& Q);

/// a1 = mean V, 2Q.Dv1 = a1 - V, 2Q.Dv2 = Lap v1, 2Q.Dv3 = a2 - |Dv1|^2 + Lap v2, a2 = int |Dv1|^2.
ExpansionCoeffs viscous_coeffs(const FourierPotential& V, const DiophantineVector& Q);

/// int |Dv|^2 on the torus by Parseval.
double dirichlet_energy(const FourierPotential& v);

/// int |Dv|^2 by midpoint quadrature with `per_axis` points per axis (1D and 2D).
double dirichlet_energy_quadrature(const FourierPotential& v, int per_axis = 256);

/// sup over a per_axis^n grid of |factor Q.Dv - rhs|.
double transport_residual(const DiophantineVector& Q, const FourierPotential& v, const FourierPotential& rhs,
                          double factor, int per_axis = 128);

struct MeanRecovery {
  double value = 0.0;
  std::vector<double> residuals;  // Hbar - H along the grid
  std::optional<std::string> warning;
};

/// Limit of Hbar(p) - H(p) as lambda -> inf along the curve samples at the
/// given lambdas, by polynomial extrapolation in 1/lambda^2 to zero.
/// `h_along` gives H(lambda P_lambda); `hbar_along` the curve value at lambda.
MeanRecovery recover_mean(std::span<const double> lambdas, std::span<const double> hbar,
                          std::span<const double> h);

/// Convenience form for a 1D curve sampled at p = lambda with H given by h_of_p.
MeanRecovery recover_mean(const EffectiveCurve& curve, const std::function<double(double)>& h_of_p,
                          std::span<const double> lambdas);

/// True when a1 and a2 agree within tol for every Q in the list.
bool expansion_indistinguishable(const FourierPotential& V1, const FourierPotential& V2,
                                 std::span<const DiophantineVector> Qs, double tol = 1e-12);

}  // namespace effham
