#include "effham/hill.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "effham/errors.hpp"

namespace effham {

namespace {

constexpr double kStabilize = 1e-11;
constexpr int kMaxSteps = 1 << 22;

// (w1, w1', w2, w2')
using State = std::array<double, 4>;

struct Segment {
  double a, b;
};

std::vector<Segment> segments_of(const Potential& V) {
  std::vector<Segment> segs;
  if (const auto* pl = V.piecewise()) {
    auto xs = pl->breakpoints();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) segs.push_back({xs[i], xs[i + 1]});
  } else {
    segs.push_back({0.0, 1.0});
  }
  return segs;
}

Monodromy integrate(const Potential& V, const std::vector<Segment>& segs, double lambda, int total) {
  State y{1.0, 0.0, 0.0, 1.0};
  auto rhs = [&](double x, const State& s) {
    const double q = -(lambda + V(x));
    return State{s[1], q * s[0], s[3], q * s[2]};
  };
  int used = 0;
  for (const Segment& sg : segs) {
    const int n = std::max(1, static_cast<int>(std::lround(total * (sg.b - sg.a))));
    const double h = (sg.b - sg.a) / n;
    for (int i = 0; i < n; ++i) {
      const double x = sg.a + i * h;
      const State k1 = rhs(x, y);
      State t;
      for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k1[j];
      const State k2 = rhs(x + 0.5 * h, t);
      for (int j = 0; j < 4; ++j) t[j] = y[j] + 0.5 * h * k2[j];
      const State k3 = rhs(x + 0.5 * h, t);
      for (int j = 0; j < 4; ++j) t[j] = y[j] + h * k3[j];
      const State k4 = rhs(x + h, t);
      for (int j = 0; j < 4; ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    }
    used += n;
  }
  for (double v : y)
    if (!std::isfinite(v))
      throw numeric_error("monodromy overflow at lambda = " + std::to_string(lambda) +
                          "; use a less negative lambda range");
  return {lambda, y[0], y[2], y[1], y[3], used};
}

double entry_change(const Monodromy& a, const Monodromy& b) {
  const double scale = std::max({1.0, std::abs(b.w1), std::abs(b.w2), std::abs(b.w1p), std::abs(b.w2p)});
  return std::max({std::abs(a.w1 - b.w1), std::abs(a.w2 - b.w2), std::abs(a.w1p - b.w1p),
                   std::abs(a.w2p - b.w2p)}) /
         scale;
}

double viscous_unit(const Potential& V, double p, int steps) {
  p = std::abs(p);
  const double target = 2.0 * std::cosh(p);
  int start = steps;
  auto g = [&](double lambda) {
    const Monodromy m = monodromy(V, lambda, start);
    start = std::max(steps, m.steps / 2);
    return m.trace() - target;
  };
  double lo = -(p * p + V.max()) - 1.0;
  const double hi = -(p * p + V.mean()) + 1.0;
  double width = hi - lo;
  int guard = 0;
  while (g(lo) <= 0.0) {
    lo -= width;
    width *= 2.0;
    if (++guard > 40) throw numeric_error("could not bracket the spectral level below the spectrum");
  }
  // Delta falls monotonically to 2 at the bottom of the spectrum: take the first crossing upward
  constexpr int kScan = 32;
  double a = lo, b = lo;
  bool found = false;
  for (int i = 1; i <= kScan; ++i) {
    b = lo + (hi - lo) * i / kScan;
    if (g(b) <= 0.0) {
      found = true;
      break;
    }
    a = b;
  }
  if (!found) throw numeric_error("spectral-range error: Delta stays above 2cosh(p) on the bracket");
  const double tol = 1e-12 * std::max(1.0, std::abs(a));
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double mid = 0.5 * (a + b);
    (g(mid) > 0.0 ? a : b) = mid;
  }
  return -0.5 * (a + b);
}

}  // namespace

Monodromy monodromy(const Potential& V, double lambda, int steps) {
  if (steps < 64) throw precondition_error("monodromy needs at least 64 steps");
  const auto segs = segments_of(V);
  int n = std::max<int>(steps, 2 * static_cast<int>(segs.size()));
  Monodromy prev = integrate(V, segs, lambda, n);
  for (;;) {
    n *= 2;
    if (n > kMaxSteps) throw numeric_error("monodromy did not stabilize; lambda range too extreme");
    Monodromy next = integrate(V, segs, lambda, n);
    if (entry_change(prev, next) <= kStabilize) return next;
    prev = next;
  }
}

double discriminant(const Potential& V, double lambda, int steps) { return monodromy(V, lambda, steps).trace(); }

std::optional<std::pair<double, double>> level_p(const Potential& V, double lambda, int steps) {
  const double delta = discriminant(V, lambda, steps);
  if (delta < 2.0) return std::nullopt;
  const double p = std::log(0.5 * (delta + std::sqrt(delta * delta - 4.0)));
  return std::make_pair(-p, p);
}

DiscriminantScan discriminant_scan(const Potential& V, std::span<const double> lambdas, int steps) {
  DiscriminantScan scan;
  for (double l : lambdas) {
    scan.lambda.push_back(l);
    scan.delta.push_back(discriminant(V, l, steps));
  }
  for (std::size_t i = 0; i + 1 < scan.delta.size(); ++i) {
    const double a = scan.delta[i], b = scan.delta[i + 1];
    if ((a - 2.0) * (b - 2.0) <= 0.0 || (a + 2.0) * (b + 2.0) <= 0.0) scan.band_edges.push_back(i);
  }
  return scan;
}

double viscous_effective_H(const Potential& V, double p, double d, int steps) {
  if (!(d > 0.0)) throw precondition_error("viscous effective Hamiltonian needs d > 0");
  if (d == 1.0) return viscous_unit(V, p, steps);
  // v = d w turns the cell problem into the d = 1 problem for p/d and V/d^2
  return d * d * viscous_unit(scale(V, 1.0 / (d * d)), p / d, steps);
}

EffectiveCurve viscous_curve(const Potential& V, std::span<const double> ps, double d, int steps) {
  EffectiveCurve curve;
  curve.method = CurveMethod::hill_spectral;
  for (double p : ps) curve.push(p, viscous_effective_H(V, p, d, steps), 1e-9 * std::max(1.0, p * p));
  return curve;
}

double isospectral_distance(const Potential& V1, const Potential& V2, std::span<const double> lambdas, int steps) {
  double worst = 0.0;
  for (double l : lambdas) worst = std::max(worst, std::abs(discriminant(V1, l, steps) - discriminant(V2, l, steps)));
  return worst;
}

}  // namespace effham
