#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace effham {

enum class CurveMethod { exact_quadrature, nonconvex_edge, numeric_pde, hill_spectral };

std::string_view to_string(CurveMethod m);

struct CurveSample {
  double p;
  double hbar;
  double err;
};

/// Sampled p -> Hbar(p), p strictly increasing.
struct EffectiveCurve {
  CurveMethod method = CurveMethod::exact_quadrature;
  std::string label;
  std::vector<CurveSample> samples;

  void push(double p, double hbar, double err = 0.0);
};

/// Inclusive grid start, start+step, ..., stop (stop included within step/1e6).
std::vector<double> linear_grid(double start, double stop, double step);
/// n points evenly spaced on [a, b].
std::vector<double> linspace(double a, double b, int n);

}  // namespace effham
