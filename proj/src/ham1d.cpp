#include "effham/ham1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "effham/errors.hpp"

namespace effham {

namespace {

// Godunov flux for an even profile g(|p|) with g nondecreasing: min over [a,b] or max over [b,a].
template <class G>
std::function<double(double, double)> even_godunov(G g) {
  return [g](double a, double b) {
    if (a <= b) return (a <= 0.0 && 0.0 <= b) ? g(0.0) : std::min(g(a), g(b));
    return std::max(g(a), g(b));
  };
}

// Root of a monotone g on the half line starting at x0 (growing in direction dir) with
// g(x0) <= target. Bracket doubles until it straddles the target, then bisects to 1e-12.
double bisect_branch(const std::function<double(double)>& g, double x0, double dir, double target) {
  double step = 1.0;
  double near = x0, far = x0 + dir * step;
  int guard = 0;
  while (g(far) < target) {
    near = far;
    step *= 2.0;
    far = x0 + dir * step;
    if (++guard > 1100 || !std::isfinite(far))
      throw numeric_error("branch inverse: bracket growth did not reach the level");
  }
  for (int it = 0; it < 400 && std::abs(far - near) > 1e-12 * std::max(1.0, std::abs(near)); ++it) {
    const double mid = 0.5 * (near + far);
    if (mid == near || mid == far) break;
    (g(mid) < target ? near : far) = mid;
  }
  return 0.5 * (near + far);
}

}  // namespace

QuasiConvexProfile::QuasiConvexProfile(Fn h, double argmin, double minval, std::string name)
    : h_(std::move(h)), argmin_(argmin), minval_(minval), name_(std::move(name)) {}

QuasiConvexProfile QuasiConvexProfile::quadratic(double coef) {
  if (!(coef > 0.0)) throw domain_error("quadratic profile needs a positive coefficient");
  QuasiConvexProfile q([coef](double p) { return coef * p * p; }, 0.0, 0.0,
                       coef == 0.5 ? "quadratic" : "quadratic(" + std::to_string(coef) + ")");
  q.inv_plus_ = [coef](double c) { return std::sqrt(c / coef); };
  q.inv_minus_ = [coef](double c) { return -std::sqrt(c / coef); };
  q.slope_ = [coef](double a, double b) { return 2.0 * coef * std::max(std::abs(a), std::abs(b)); };
  q.godunov_ = even_godunov([coef](double p) { return coef * p * p; });
  return q;
}

QuasiConvexProfile QuasiConvexProfile::absolute() {
  QuasiConvexProfile q([](double p) { return std::abs(p); }, 0.0, 0.0, "abs");
  q.inv_plus_ = [](double c) { return c; };
  q.inv_minus_ = [](double c) { return -c; };
  q.slope_ = [](double, double) { return 1.0; };
  q.godunov_ = even_godunov([](double p) { return std::abs(p); });
  return q;
}

QuasiConvexProfile QuasiConvexProfile::power(double gamma, double c) {
  if (!(gamma >= 1.0) || !(c >= 0.0)) throw domain_error("power profile needs gamma >= 1 and c >= 0");
  QuasiConvexProfile q([gamma, c](double p) { return std::pow(c + std::abs(p), gamma); }, 0.0,
                       std::pow(c, gamma), "power");
  q.inv_plus_ = [gamma, c](double y) { return std::pow(y, 1.0 / gamma) - c; };
  q.inv_minus_ = [gamma, c](double y) { return c - std::pow(y, 1.0 / gamma); };
  q.slope_ = [gamma, c](double a, double b) {
    return gamma * std::pow(c + std::max(std::abs(a), std::abs(b)), gamma - 1.0);
  };
  return q;
}

QuasiConvexProfile QuasiConvexProfile::from_function(Fn h, double argmin, std::string name) {
  const double minval = h(argmin);
  QuasiConvexProfile q(h, argmin, minval, std::move(name));
  q.inv_plus_ = [h, argmin](double c) { return bisect_branch(h, argmin, +1.0, c); };
  q.inv_minus_ = [h, argmin](double c) { return bisect_branch(h, argmin, -1.0, c); };
  q.slope_ = [h](double a, double b) {
    if (a > b) std::swap(a, b);
    const int n = 32;
    const double w = std::max(b - a, 1e-6);
    const double dx = w / n;
    double m = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = a + i * dx;
      m = std::max(m, std::abs(h(x + 0.5 * dx) - h(x - 0.5 * dx)) / dx);
    }
    return 1.25 * m;
  };
  return q;
}

double QuasiConvexProfile::inverse(Side side, double c) const {
  if (c < minval_) throw domain_error("branch inverse requested below min H");
  return side == Side::plus ? inv_plus_(c) : inv_minus_(c);
}

double QuasiConvexProfile::max_slope(double a, double b) const { return slope_(a, b); }

double branch_inverse(const QuasiConvexProfile& h, Side side, double c) { return h.inverse(side, c); }

// ---------------------------------------------------------------------------

NonconvexProfile::NonconvexProfile(double theta1, double theta2) : theta1_(theta1), theta2_(theta2) {
  if (!(theta2 > 0.0) || !(theta1 > theta2))
    throw domain_error("nonconvex profile requires theta1 > theta2 > 0");
  // first rising piece through (0,0) and (theta2,1/2): F = r/(2 theta2) hits 1/3 at 2 theta2/3
  theta3_ = 2.0 * theta2 / 3.0;
  slope3_ = 0.5 / theta2;
  slope2_ = (1.0 / 3.0 - 0.5) / (theta1 - theta2);
}

double NonconvexProfile::F(double r) const {
  if (r <= theta2_) return slope3_ * r;
  if (r <= theta1_) return 0.5 + slope2_ * (r - theta2_);
  return 1.0 / 3.0 + (r - theta1_);
}

double NonconvexProfile::operator()(double p) const { return F(std::abs(p)); }

double NonconvexProfile::psi(int j, double y) const {
  constexpr double third = 1.0 / 3.0;
  constexpr double eps = 1e-14;
  switch (j) {
    case 1:
      if (!(y >= third - eps)) throw domain_error("psi_1 is defined on [1/3, inf)");
      return theta1_ + (y - third);
    case 2:
      if (!(y >= third - eps && y <= 0.5 + eps)) throw domain_error("psi_2 is defined on [1/3, 1/2]");
      return theta2_ + (y - 0.5) / slope2_;
    case 3:
      if (!(y >= -eps && y <= 0.5 + eps)) throw domain_error("psi_3 is defined on [0, 1/2]");
      return y / slope3_;
    default:
      throw domain_error("branch index must be 1, 2 or 3");
  }
}

double NonconvexProfile::psi_integral(int j, double y0, double y1) const {
  return 0.5 * (y1 - y0) * (psi(j, y0) + psi(j, y1));
}

double NonconvexProfile::max_slope(double a, double b) const {
  if (a > b) std::swap(a, b);
  double lo = (a <= 0.0 && b >= 0.0) ? 0.0 : std::min(std::abs(a), std::abs(b));
  double hi = std::max(std::abs(a), std::abs(b));
  double m = 0.0;
  if (lo <= theta2_) m = std::max(m, slope3_);
  if (hi >= theta2_ && lo <= theta1_) m = std::max(m, std::abs(slope2_));
  if (hi >= theta1_) m = std::max(m, 1.0);
  return m;
}

NonconvexProfile make_default_F(double theta1, double theta2) { return {theta1, theta2}; }

double branch_psi(const NonconvexProfile& P, int j, double y) { return P.psi(j, y); }

Hamiltonian1D as_hamiltonian(const QuasiConvexProfile& h) {
  auto godunov = [h](double a, double b) {
    if (a <= b) {
      const double m = h.argmin();
      return (a <= m && m <= b) ? h.minval() : std::min(h(a), h(b));
    }
    return std::max(h(a), h(b));
  };
  return {[h](double p) { return h(p); }, [h](double a, double b) { return h.max_slope(a, b); },
          h.godunov_flux() ? h.godunov_flux() : godunov, h.name()};
}

Hamiltonian1D as_hamiltonian(const NonconvexProfile& P) {
  // F(|p|) is piecewise linear, so extrema over an interval sit at its ends or at the kinks
  auto godunov = [P](double a, double b) {
    const bool take_min = a <= b;
    const double lo = std::min(a, b), hi = std::max(a, b);
    double e = take_min ? std::min(P(a), P(b)) : std::max(P(a), P(b));
    for (double k : {0.0, P.theta2(), -P.theta2(), P.theta1(), -P.theta1()}) {
      if (k < lo || k > hi) continue;
      e = take_min ? std::min(e, P(k)) : std::max(e, P(k));
    }
    return e;
  };
  return {[P](double p) { return P(p); }, [P](double a, double b) { return P.max_slope(a, b); }, godunov,
          "nonconvexF"};
}

}  // namespace effham
