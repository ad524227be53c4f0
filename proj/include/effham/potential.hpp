#pragma once

// 1-periodic potentials on the unit torus, in breakpoint or spectral form,
// together with their distribution functions and monotone-piece data.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace effham {

using Wavevector = std::vector<int>;

/// Continuous, 1-periodic, piecewise-linear V given by its values at breakpoints
/// 0 = x_0 < x_1 < ... < x_M = 1 with v_0 = v_M.
class PiecewiseLinearPotential {
 public:
  PiecewiseLinearPotential(std::vector<double> breakpoints, std::vector<double> values);

  static PiecewiseLinearPotential from_points(const std::vector<std::pair<double, double>>& points);
  static PiecewiseLinearPotential zero();

  double operator()(double x) const;

  std::span<const double> breakpoints() const { return x_; }
  std::span<const double> values() const { return v_; }
  std::size_t segments() const { return x_.size() - 1; }

  double min() const;
  double max() const;
  double mean() const;

 private:
  std::vector<double> x_;
  std::vector<double> v_;
};

/// Real potential V(x) = sum_k lambda_k exp(2 pi i k.x) on the n-torus with a
/// finite spectrum. Hermitian symmetry lambda_{-k} = conj(lambda_k) is enforced.
class FourierPotential {
 public:
  using Spectrum = std::map<Wavevector, std::complex<double>>;

  explicit FourierPotential(int dim);
  FourierPotential(int dim, Spectrum coefficients);

  /// amplitude * cos(2 pi k.x)
  static FourierPotential cosine(Wavevector k, double amplitude);
  /// amplitude * sin(2 pi k.x)
  static FourierPotential sine(Wavevector k, double amplitude);

  int dim() const { return dim_; }
  const Spectrum& coefficients() const { return c_; }
  std::complex<double> coefficient(const Wavevector& k) const;
  double mean() const;
  /// max |k|_inf over modes with nonzero amplitude
  int max_order() const;

  double operator()(std::span<const double> x) const;
  double operator()(double x) const;

  FourierPotential operator+(const FourierPotential& other) const;
  FourierPotential operator*(double factor) const;

 private:
  int dim_;
  Spectrum c_;
};

/// A 1-dimensional potential in either representation. min/max/mean are
/// exact for the piecewise-linear form; for the spectral form the extrema are
/// located by dense sampling followed by Brent refinement.
class Potential {
 public:
  Potential(PiecewiseLinearPotential v);  // NOLINT(google-explicit-constructor)
  Potential(FourierPotential v);          // NOLINT(google-explicit-constructor)

  double operator()(double x) const;
  double min() const { return min_; }
  double max() const { return max_; }
  double mean() const { return mean_; }

  const PiecewiseLinearPotential* piecewise() const;
  const FourierPotential* fourier() const;

  /// Points in [0,1) where the potential attains a local maximum.
  const std::vector<double>& local_maxima() const { return maxima_; }

 private:
  std::variant<PiecewiseLinearPotential, FourierPotential> rep_;
  double min_ = 0.0;
  double max_ = 0.0;
  double mean_ = 0.0;
  std::vector<double> maxima_;
};

// ---------------------------------------------------------------------------
// distribution functions

struct CdfKnot {
  double t;
  double F;
};

/// Piecewise-linear, right-continuous distribution function. Jumps are stored
/// as two knots with equal t: the first carries the left limit.
/// The monotone-piece distributions are sub-probability measures, so the
/// terminal mass is the total length of the pieces rather than 1.
class DistributionFunction {
 public:
  DistributionFunction() = default;
  explicit DistributionFunction(std::vector<CdfKnot> knots);

  double operator()(double t) const;
  double left_limit(double t) const;
  std::span<const CdfKnot> knots() const { return knots_; }
  double total_mass() const { return knots_.empty() ? 0.0 : knots_.back().F; }

 private:
  std::vector<CdfKnot> knots_;
};

// ---------------------------------------------------------------------------
// operations

double eval_periodic(const Potential& v, double x);

/// V_s: descends linearly from 0 to -1 on [0,s], climbs back to 0 on [s,1].
PiecewiseLinearPotential make_sawtooth(double s);

/// Multiwell oscillating between 0 and -1, linear on [a_i,c_i] and [c_i,a_{i+1}].
/// `a` holds a_1=0 < ... < a_m=1, `c` holds the m-1 minima.
PiecewiseLinearPotential make_multiwell(const std::vector<double>& a, const std::vector<double>& c);

/// Preset with wells of depth 2/5 and 1 and equal monotone-piece distributions to V_{1/2}.
PiecewiseLinearPotential make_vhat2();

/// Exact for piecewise-linear potentials (resolution unused); grid-sampled with
/// O(1/resolution) error for spectral ones.
DistributionFunction cdf(const Potential& v, std::size_t resolution = 4096);
DistributionFunction cdf(const PiecewiseLinearPotential& v);

/// Sup-norm of F1 - F2 over the merged knot set (left and right limits).
double cdf_distance(const DistributionFunction& f1, const DistributionFunction& f2);

struct MonotonePieces {
  DistributionFunction decreasing;
  DistributionFunction increasing;
};

/// Distribution of V restricted to its decreasing and to its increasing segments.
/// Requires max V = 0, min V = -1 and no flat segments.
MonotonePieces monotone_piece_cdfs(const PiecewiseLinearPotential& v);

/// (total length of decreasing segments, total length of increasing segments)
std::pair<double, double> balance_totals(const PiecewiseLinearPotential& v);

/// Exact Fourier coefficients lambda_k, |k| <= K, by closed-form segment integrals.
FourierPotential fourier_coefficients(const PiecewiseLinearPotential& v, int K);

// transforms used by the isospectrality and distribution experiments

Potential translate(const Potential& v, double shift);  // x -> V(x + shift)
Potential reflect(const Potential& v);                  // x -> V(-x)
Potential compress(const Potential& v, int m);          // x -> V(m x)
Potential add_constant(const Potential& v, double c);
Potential scale(const Potential& v, double factor);

PiecewiseLinearPotential translate(const PiecewiseLinearPotential& v, double shift);
PiecewiseLinearPotential reflect(const PiecewiseLinearPotential& v);
PiecewiseLinearPotential compress(const PiecewiseLinearPotential& v, int m);

}  // namespace effham
