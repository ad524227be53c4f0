#pragma once

// Exact one-dimensional effective Hamiltonians: the level-set quadrature for
// quasi-convex H, the right edge of the flat piece for the nonconvex F(|p|),
// and the change of variables relating a multiwell to the sawtooth V_s.

#include <span>
#include <vector>

#include "effham/curve.hpp"
#include "effham/ham1d.hpp"
#include "effham/potential.hpp"

namespace effham {

/// int_0^1 H_side^{-1}(c - V(x)) dx, c >= min H + max V. Absolute error <= 1e-10.
double pplus_level(const QuasiConvexProfile& h, const Potential& v, double c, Side side = Side::plus);

struct FlatPiece {
  double p_minus;
  double p_plus;
  double level;  // min H + max V
};

FlatPiece flat_piece(const QuasiConvexProfile& h, const Potential& v);

double effective_H_quasiconvex(const QuasiConvexProfile& h, const Potential& v, double p);

EffectiveCurve effective_curve_quasiconvex(const QuasiConvexProfile& h, const Potential& v,
                                           std::span<const double> ps);

/// Hbar for H = |p|: max V + max(0, |p| + mean V - max V).
double closed_form_abs(const Potential& v, double p);

/// p_{+,s} = max{p >= 0 : Hbar_s(p) = 0} for H = F(|p|) and V = V_s.
double pplus_sawtooth(const NonconvexProfile& P, double s);

/// Right flat edge for F(|p|) and a multiwell with max 0 attained at x = 0.
/// Wells reaching depth 1/2 switch to psi_1 between the descending crossing of
/// -V = 1/3 and the ascending crossing of -V = 1/2; shallower wells stay on psi_3.
double pplus_multiwell(const NonconvexProfile& P, const PiecewiseLinearPotential& v);

/// Left flat edge (a negative number), by reflection x -> -x.
double pminus_multiwell(const NonconvexProfile& P, const PiecewiseLinearPotential& v);

/// Monotone piecewise-linear map of [0,1] onto itself.
struct Reparametrization {
  std::vector<double> knots;
  std::vector<double> images;

  double operator()(double x) const;
  /// min slope over the pieces; > 0 means tau' > 0 a.e.
  double min_slope() const;
};

/// Zeros a_i and minima c_i of a 0/-1 multiwell (a.size() == c.size() + 1).
struct MultiwellLayout {
  std::vector<double> a;
  std::vector<double> c;
};

MultiwellLayout multiwell_layout(const PiecewiseLinearPotential& vhat);

/// The per-well rescaled sawtooth: 0 at a_i, -1 at a_is = (1-s) a_i + s a_{i+1}.
PiecewiseLinearPotential rescaled_sawtooth(const PiecewiseLinearPotential& vhat, double s);

/// tau with tau(a_i) = a_i, tau(c_i) = a_is and vhat = rescaled_sawtooth(vhat, s) o tau.
Reparametrization indistinguishability_tau(const PiecewiseLinearPotential& vhat, double s);

/// sum (c_i - a_i)/s - sum (a_{i+1} - c_i)/(1-s); zero exactly when vhat balances with V_s.
double balance_residual(const PiecewiseLinearPotential& vhat, double s);

}  // namespace effham
