#include "effham/inviscid1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "effham/errors.hpp"

namespace effham {

namespace {

constexpr double kQuadTol = 1e-14;

boost::math::quadrature::tanh_sinh<double>& integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> ts;
  return ts;
}

template <class F>
double integrate(F&& f, double a, double b) {
  if (b <= a) return 0.0;
  return integrator().integrate(f, a, b, kQuadTol);
}

}  // namespace

double pplus_level(const QuasiConvexProfile& h, const Potential& v, double c, Side side) {
  const double hmin = h.minval();
  if (c < hmin + v.max() - 1e-12) throw domain_error("level c below min H + max V");
  auto branch = [&](double y) { return h.inverse(side, std::max(y, hmin)); };

  if (const auto* pl = v.piecewise()) {
    // Only the distribution of V matters: integrate each segment in the value variable.
    auto xs = pl->breakpoints();
    auto vs = pl->values();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
      const double len = xs[i + 1] - xs[i];
      const double lo = std::min(vs[i], vs[i + 1]), hi = std::max(vs[i], vs[i + 1]);
      if (hi == lo) {
        total += len * branch(c - lo);
        continue;
      }
      // tanh-sinh on the reflected variable keeps the sqrt-type endpoint at v = max V accurate
      auto g = [&](double u) { return branch(c - hi + u); };
      total += len / (hi - lo) * integrate(g, 0.0, hi - lo);
    }
    return total;
  }

  // spectral form: split at local maxima, where c - V may touch zero
  std::vector<double> cuts = v.local_maxima();
  if (cuts.empty()) cuts.push_back(0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const double a = cuts[i];
    const double b = (i + 1 < cuts.size()) ? cuts[i + 1] : cuts.front() + 1.0;
    total += integrate([&](double x) { return branch(c - v(x)); }, a, b);
  }
  return total;
}

FlatPiece flat_piece(const QuasiConvexProfile& h, const Potential& v) {
  const double level = h.minval() + v.max();
  return {pplus_level(h, v, level, Side::minus), pplus_level(h, v, level, Side::plus), level};
}

namespace {

double invert_level(const QuasiConvexProfile& h, const Potential& v, double p, Side side,
                    double level) {
  const double sign = side == Side::plus ? 1.0 : -1.0;
  const double target = sign * p;
  auto g = [&](double c) { return sign * pplus_level(h, v, c, side); };
  double lo = level;
  double width = h(h.argmin() + sign * (std::abs(p - h.argmin()) + 1.0)) - h.minval() + 1.0;
  double hi = level + width;
  int guard = 0;
  while (g(hi) < target) {
    lo = hi;
    width *= 2.0;
    hi = level + width;
    if (++guard > 200) throw numeric_error("could not bracket the effective level");
  }
  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double effective_H_quasiconvex(const QuasiConvexProfile& h, const Potential& v, double p) {
  const FlatPiece fp = flat_piece(h, v);
  if (p >= fp.p_minus && p <= fp.p_plus) return fp.level;
  return invert_level(h, v, p, p > fp.p_plus ? Side::plus : Side::minus, fp.level);
}

EffectiveCurve effective_curve_quasiconvex(const QuasiConvexProfile& h, const Potential& v,
                                           std::span<const double> ps) {
  EffectiveCurve curve;
  curve.method = CurveMethod::exact_quadrature;
  const FlatPiece fp = flat_piece(h, v);
  for (double p : ps) {
    const double hb = (p >= fp.p_minus && p <= fp.p_plus)
                          ? fp.level
                          : invert_level(h, v, p, p > fp.p_plus ? Side::plus : Side::minus, fp.level);
    curve.push(p, hb, 1e-10);
  }
  return curve;
}

double closed_form_abs(const Potential& v, double p) {
  return v.max() + std::max(0.0, std::abs(p) + v.mean() - v.max());
}

double pplus_sawtooth(const NonconvexProfile& P, double s) {
  if (!(s > 0.0 && s < 1.0)) throw domain_error("sawtooth parameter s must lie in (0,1)");
  constexpr double third = 1.0 / 3.0;
  const double rising = P.psi_integral(1, third, 1.0);
  const double base = P.psi_integral(3, 0.0, third);
  const double swap = P.psi_integral(3, third, 0.5) - P.psi_integral(1, third, 0.5);
  return rising + base + (1.0 - s) * swap;
}

namespace {

struct Well {
  std::size_t begin;   // breakpoint index of the left zero
  std::size_t bottom;  // index of the minimum
  std::size_t end;     // index of the right zero
};

std::vector<Well> split_wells(const PiecewiseLinearPotential& v) {
  auto vs = v.values();
  const double tol = 1e-12;
  if (std::abs(v.max()) > tol || std::abs(vs.front()) > tol)
    throw shape_error("multiwell must attain its maximum 0 at x = 0");
  std::vector<Well> wells;
  std::size_t i = 0;
  const std::size_t last = vs.size() - 1;
  while (i < last) {
    Well w{i, i, i};
    std::size_t j = i;
    while (j < last && vs[j + 1] < vs[j]) ++j;
    if (j == i) throw shape_error("multiwell: expected a strictly decreasing piece after each zero");
    w.bottom = j;
    while (j < last && vs[j + 1] > vs[j]) ++j;
    if (j == w.bottom) throw shape_error("multiwell: expected a strictly increasing piece after each minimum");
    if (std::abs(vs[j]) > tol)
      throw shape_error("multiwell: each well must climb back to 0 (wells must be unimodal)");
    w.end = j;
    wells.push_back(w);
    i = j;
  }
  return wells;
}

}  // namespace

double pplus_multiwell(const NonconvexProfile& P, const PiecewiseLinearPotential& v) {
  constexpr double third = 1.0 / 3.0;
  auto xs = v.breakpoints();
  auto vs = v.values();
  double total = 0.0;
  for (const Well& w : split_wells(v)) {
    const double depth = -vs[w.bottom];
    const bool deep = depth >= 0.5 - 1e-14;
    for (std::size_t i = w.begin; i < w.end; ++i) {
      const double len = xs[i + 1] - xs[i];
      const double ya = -vs[i], yb = -vs[i + 1];
      const double lo = std::min(ya, yb), hi = std::max(ya, yb);
      const double jac = len / (hi - lo);
      // psi_1 above the switching level, psi_3 below; descending side switches at 1/3, ascending at 1/2
      const double sw = deep ? (i < w.bottom ? third : 0.5) : std::numeric_limits<double>::infinity();
      const double mid = std::clamp(sw, lo, hi);
      total += jac * P.psi_integral(3, lo, mid);
      if (hi > mid) total += jac * P.psi_integral(1, mid, hi);
    }
  }
  return total;
}

double pminus_multiwell(const NonconvexProfile& P, const PiecewiseLinearPotential& v) {
  return -pplus_multiwell(P, reflect(v));
}

// ---------------------------------------------------------------------------

double Reparametrization::operator()(double x) const {
  const double fl = std::floor(x);
  const double y = x - fl;
  auto it = std::upper_bound(knots.begin(), knots.end(), y);
  std::size_t j = std::clamp<std::size_t>(static_cast<std::size_t>(it - knots.begin()), 1, knots.size() - 1);
  const double t = (y - knots[j - 1]) / (knots[j] - knots[j - 1]);
  return fl + images[j - 1] + t * (images[j] - images[j - 1]);
}

double Reparametrization::min_slope() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < knots.size(); ++j)
    m = std::min(m, (images[j] - images[j - 1]) / (knots[j] - knots[j - 1]));
  return m;
}

MultiwellLayout multiwell_layout(const PiecewiseLinearPotential& vhat) {
  auto xs = vhat.breakpoints();
  auto vs = vhat.values();
  MultiwellLayout layout;
  for (const Well& w : split_wells(vhat)) {
    if (std::abs(vs[w.bottom] + 1.0) > 1e-12) throw shape_error("every well of a 0/-1 multiwell must reach -1");
    layout.a.push_back(xs[w.begin]);
    layout.c.push_back(xs[w.bottom]);
  }
  layout.a.push_back(1.0);
  return layout;
}

PiecewiseLinearPotential rescaled_sawtooth(const PiecewiseLinearPotential& vhat, double s) {
  if (!(s > 0.0 && s < 1.0)) throw domain_error("sawtooth parameter s must lie in (0,1)");
  const MultiwellLayout L = multiwell_layout(vhat);
  std::vector<double> a_s(L.c.size());
  for (std::size_t i = 0; i < L.c.size(); ++i) a_s[i] = (1.0 - s) * L.a[i] + s * L.a[i + 1];
  return make_multiwell(L.a, a_s);
}

Reparametrization indistinguishability_tau(const PiecewiseLinearPotential& vhat, double s) {
  if (!(s > 0.0 && s < 1.0)) throw domain_error("sawtooth parameter s must lie in (0,1)");
  const MultiwellLayout L = multiwell_layout(vhat);
  auto xs = vhat.breakpoints();
  auto vs = vhat.values();
  Reparametrization tau;
  std::size_t well = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    while (well + 1 < L.c.size() && x >= L.a[well + 1]) ++well;
    const double a = L.a[well], b = L.a[well + 1];
    const double as = (1.0 - s) * a + s * b;
    // invert the rescaled sawtooth on the matching monotone side
    const double image = (x <= L.c[well]) ? a + (as - a) * (-vs[i]) : b + (b - as) * vs[i];
    tau.knots.push_back(x);
    tau.images.push_back(image);
  }
  tau.images.front() = 0.0;
  tau.images.back() = 1.0;
  return tau;
}

double balance_residual(const PiecewiseLinearPotential& vhat, double s) {
  if (!(s > 0.0 && s < 1.0)) throw domain_error("sawtooth parameter s must lie in (0,1)");
  const MultiwellLayout L = multiwell_layout(vhat);
  double dec = 0.0, inc = 0.0;
  for (std::size_t i = 0; i < L.c.size(); ++i) {
    dec += L.c[i] - L.a[i];
    inc += L.a[i + 1] - L.c[i];
  }
  return dec / s - inc / (1.0 - s);
}

}  // namespace effham
