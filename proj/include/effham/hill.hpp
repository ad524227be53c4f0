#pragma once

// Hill's equation -w'' = (lambda + V) w on one period: monodromy, discriminant
// and the viscous effective Hamiltonian of -d v'' + |p + v'|^2 + V = Hbar.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "effham/curve.hpp"
#include "effham/potential.hpp"

namespace effham {

/// Columns are the solutions with (w, w')(0) = (1, 0) and (0, 1), evaluated at x = 1.
struct Monodromy {
  double lambda = 0.0;
  double w1 = 0.0, w2 = 0.0;    // w1(1), w2(1)
  double w1p = 0.0, w2p = 0.0;  // w1'(1), w2'(1)
  int steps = 0;                // RK4 steps used after doubling

  double det() const { return w1 * w2p - w2 * w1p; }
  double trace() const { return w1 + w2p; }
};

/// Classical RK4 from `steps` (>= 64), doubled until all four entries agree to
/// 1e-11 relative. Steps are aligned with the breakpoints of a piecewise-linear V.
Monodromy monodromy(const Potential& V, double lambda, int steps = 64);

double discriminant(const Potential& V, double lambda, int steps = 64);

/// {-p, p} with Delta = 2 cosh p when Delta(lambda) >= 2, empty otherwise.
std::optional<std::pair<double, double>> level_p(const Potential& V, double lambda, int steps = 64);

struct DiscriminantScan {
  std::vector<double> lambda;
  std::vector<double> delta;
  /// indices i with Delta crossing +2 or -2 between lambda[i] and lambda[i+1] (band edges)
  std::vector<std::size_t> band_edges;
};

DiscriminantScan discriminant_scan(const Potential& V, std::span<const double> lambdas, int steps = 64);

/// Hbar for -d v'' + |p + v'|^2 + V = Hbar. d != 1 is reduced to d = 1 by
/// v = d w: Hbar_d(p; V) = d^2 Hbar_1(p/d; V/d^2).
double viscous_effective_H(const Potential& V, double p, double d = 1.0, int steps = 64);

EffectiveCurve viscous_curve(const Potential& V, std::span<const double> ps, double d = 1.0, int steps = 64);

/// max over the grid of |Delta_1 - Delta_2|.
double isospectral_distance(const Potential& V1, const Potential& V2, std::span<const double> lambdas,
                            int steps = 64);

}  // namespace effham
