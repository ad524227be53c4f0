#include "effham/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace effham {

std::string_view to_string(CurveMethod m) {
  switch (m) {
    case CurveMethod::exact_quadrature: return "exact-quadrature";
    case CurveMethod::nonconvex_edge: return "nonconvex-edge";
    case CurveMethod::numeric_pde: return "numeric-pde";
    case CurveMethod::hill_spectral: return "hill-spectral";
  }
  return "unknown";
}

void EffectiveCurve::push(double p, double hbar, double err) {
  if (!samples.empty() && !(p > samples.back().p))
    throw std::invalid_argument("effective curve samples must have strictly increasing p");
  samples.push_back({p, hbar, err});
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || stop < start) throw std::invalid_argument("grid needs step > 0 and stop >= start");
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-6));
  for (long i = 0; i <= n; ++i) g.push_back(start + static_cast<double>(i) * step);
  return g;
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) return {a};
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

}  // namespace effham
