#pragma once

// One-dimensional Hamiltonian profiles with invertible monotone branches.

#include <functional>
#include <optional>
#include <string>

namespace effham {

enum class Side { plus, minus };

/// H nonincreasing on (-inf, p*] and nondecreasing on [p*, inf), coercive.
/// Branch inverses are analytic when known, bracketed bisection otherwise.
class QuasiConvexProfile {
 public:
  using Fn = std::function<double(double)>;
  using SlopeBound = std::function<double(double, double)>;

  /// coef * p^2 (coef = 1/2 is the standard kinetic energy)
  static QuasiConvexProfile quadratic(double coef = 0.5);
  static QuasiConvexProfile absolute();
  /// (c + |p|)^gamma, gamma >= 1, c >= 0
  static QuasiConvexProfile power(double gamma, double c);
  /// Generic profile; inverses by bisection, slope bound by sampled difference quotients.
  static QuasiConvexProfile from_function(Fn h, double argmin, std::string name);

  double operator()(double p) const { return h_(p); }
  double argmin() const { return argmin_; }
  double minval() const { return minval_; }
  const std::string& name() const { return name_; }

  /// H_side^{-1}(c): the p on the given branch with H(p) = c.
  double inverse(Side side, double c) const;

  /// Upper bound on |H'| over [a, b].
  double max_slope(double a, double b) const;

  /// Closed-form Godunov flux when the factory supplies one; empty otherwise.
  const SlopeBound& godunov_flux() const { return godunov_; }

 private:
  QuasiConvexProfile(Fn h, double argmin, double minval, std::string name);

  Fn h_;
  double argmin_;
  double minval_;
  std::string name_;
  Fn inv_plus_;
  Fn inv_minus_;
  SlopeBound slope_;
  SlopeBound godunov_;
};

/// H_+^{-1}(c) or H_-^{-1}(c), c >= h*; domain_error below the minimum.
double branch_inverse(const QuasiConvexProfile& h, Side side, double c);

/// F on [0, inf) with F(0)=0, F(theta2)=1/2, F(theta1)=F(theta3)=1/3, increasing on
/// [0,theta2] and [theta1,inf), decreasing in between. The Hamiltonian is H(p)=F(|p|).
/// Only the piecewise-linear F is provided, so every branch inverse is affine.
class NonconvexProfile {
 public:
  NonconvexProfile(double theta1, double theta2);

  double theta1() const { return theta1_; }
  double theta2() const { return theta2_; }
  double theta3() const { return theta3_; }

  double F(double r) const;
  double operator()(double p) const;

  /// psi_j: inverse of F on branch j (1: [theta1,inf), 2: [theta2,theta1], 3: [0,theta2]).
  double psi(int j, double y) const;
  /// Exact integral of psi_j over [y0, y1] (psi_j is affine).
  double psi_integral(int j, double y0, double y1) const;

  double max_slope(double a, double b) const;

 private:
  double theta1_, theta2_, theta3_;
  double slope3_, slope2_;
};

NonconvexProfile make_default_F(double theta1 = 2.0, double theta2 = 1.5);

double branch_psi(const NonconvexProfile& P, int j, double y);

/// Value and slope bound of a 1D Hamiltonian, the form consumed by the PDE solver.
struct Hamiltonian1D {
  std::function<double(double)> value;
  std::function<double(double, double)> max_slope;
  /// Godunov flux: min of H over [a,b] when a <= b, max over [b,a] otherwise.
  std::function<double(double, double)> godunov;
  std::string name;
};

Hamiltonian1D as_hamiltonian(const QuasiConvexProfile& h);
Hamiltonian1D as_hamiltonian(const NonconvexProfile& P);

}  // namespace effham
