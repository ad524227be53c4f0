#include "effham/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "effham/errors.hpp"

namespace effham {

namespace {

using cplx = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDivisorFloor = 1e-12;

double norm2(const Wavevector& k) {
  double s = 0.0;
  for (int c : k) s += static_cast<double>(c) * c;
  return s;
}

bool is_zero(const Wavevector& k) {
  return std::all_of(k.begin(), k.end(), [](int c) { return c == 0; });
}

std::string format_k(const Wavevector& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

// Calls f(k) for every k with |k|_inf <= K in dimension n.
template <class F>
void for_each_k(int n, int K, F&& f) {
  Wavevector k(n, -K);
  for (;;) {
    f(k);
    int i = 0;
    while (i < n && k[i] == K) k[i++] = -K;
    if (i == n) return;
    ++k[i];
  }
}

void require_dim(const DiophantineVector& Q, const FourierPotential& v) {
  if (Q.dim() != v.dim()) throw precondition_error("direction and potential dimensions differ");
}

// Calls f(x) on the midpoint grid with per_axis points per axis.
template <class F>
void for_each_point(int n, int per_axis, F&& f) {
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  for (;;) {
    for (int j = 0; j < n; ++j) x[j] = (idx[j] + 0.5) / per_axis;
    f(std::span<const double>(x));
    int i = 0;
    while (i < n && idx[i] == per_axis - 1) idx[i++] = 0;
    if (i == n) return;
    ++idx[i];
  }
}

// Real value of the partial derivative along `axis` of v at x.
double partial(const FourierPotential& v, int axis, std::span<const double> x) {
  double s = 0.0;
  for (const auto& [k, c] : v.coefficients()) {
    double phase = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) phase += k[j] * x[j];
    s += (cplx(0.0, kTwoPi * k[axis]) * c * std::polar(1.0, kTwoPi * phase)).real();
  }
  return s;
}

}  // namespace

double DiophantineVector::dot(const Wavevector& k) const {
  double s = 0.0;
  for (std::size_t j = 0; j < Q.size(); ++j) s += Q[j] * k[j];
  return s;
}

DiophantineVector make_diophantine(std::vector<double> Q, int K) {
  const int n = static_cast<int>(Q.size());
  if (n < 1 || n > 3) throw precondition_error("Diophantine direction needs dimension 1, 2 or 3");
  if (K < 1) throw precondition_error("K must be >= 1");
  DiophantineVector d;
  d.Q = std::move(Q);
  d.alpha = n == 1 ? 0.0 : static_cast<double>(n);
  d.K_checked = K;
  double C = std::numeric_limits<double>::infinity();
  Wavevector worst;
  for_each_k(n, K, [&](const Wavevector& k) {
    if (is_zero(k)) return;
    const double v = std::abs(d.dot(k)) * std::pow(std::sqrt(norm2(k)), d.alpha);
    if (v < C) {
      C = v;
      worst = k;
    }
  });
  if (!(C > kDivisorFloor))
    throw domain_error("direction is resonant: Q.k = 0 for k = " + format_k(worst));
  d.C = C;
  return d;
}

DiophantineVector make_diophantine(int n, const std::string& preset, int K) {
  if (n < 1 || n > 3) throw precondition_error("Diophantine presets exist for n = 1, 2, 3");
  if (n == 1) return make_diophantine(std::vector<double>{1.0}, K);
  const double phi = std::numbers::phi;
  std::vector<double> Q;
  if (preset == "golden") {
    Q = {1.0, phi, phi * phi};
  } else if (preset == "sqrt-primes") {
    Q = {std::sqrt(2.0), std::sqrt(3.0), std::sqrt(5.0)};
  } else {
    throw precondition_error("unknown Diophantine preset '" + preset + "'");
  }
  Q.resize(n);
  return make_diophantine(std::move(Q), K);
}

FourierPotential solve_transport(const DiophantineVector& Q, const FourierPotential& rhs, double factor) {
  require_dim(Q, rhs);
  if (factor == 0.0) throw precondition_error("transport factor must be nonzero");
  if (std::abs(rhs.mean()) > 1e-14) throw precondition_error("transport right-hand side must have zero mean");
  FourierPotential::Spectrum out;
  for (const auto& [k, c] : rhs.coefficients()) {
    if (is_zero(k) || c == cplx(0.0)) continue;
    const double qk = Q.dot(k);
    if (std::abs(qk) < kDivisorFloor) throw small_divisor_error("small divisor |Q.k| at k = " + format_k(k), k);
    out[k] = c / (factor * cplx(0.0, kTwoPi * qk));
  }
  return FourierPotential(rhs.dim(), std::move(out));
}

FourierPotential directional_derivative(const DiophantineVector& Q, const FourierPotential& v, double factor) {
  require_dim(Q, v);
  FourierPotential::Spectrum out;
  for (const auto& [k, c] : v.coefficients()) out[k] = factor * cplx(0.0, kTwoPi * Q.dot(k)) * c;
  return FourierPotential(v.dim(), std::move(out));
}

FourierPotential laplacian(const FourierPotential& v) {
  FourierPotential::Spectrum out;
  for (const auto& [k, c] : v.coefficients()) out[k] = -kTwoPi * kTwoPi * norm2(k) * c;
  return FourierPotential(v.dim(), std::move(out));
}

FourierPotential gradient_square(const FourierPotential& v) {
  const int n = v.dim();
  FourierPotential::Spectrum out;
  const auto& spec = v.coefficients();
  for (const auto& [k1, c1] : spec)
    for (const auto& [k2, c2] : spec) {
      // (d_j v)_k1 (d_j v)_k2 = (2 pi i)^2 k1_j k2_j c1 c2
      double kk = 0.0;
      Wavevector sum(n);
      for (int j = 0; j < n; ++j) {
        kk += static_cast<double>(k1[j]) * k2[j];
        sum[j] = k1[j] + k2[j];
      }
      if (kk == 0.0) continue;
      out[sum] += -kTwoPi * kTwoPi * kk * c1 * c2;
    }
  // symmetrize away rounding so the Hermitian check holds exactly
  for (auto& [k, c] : out) {
    Wavevector mk(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) mk[j] = -k[j];
    if (mk < k) continue;
    auto it = out.find(mk);
    if (it == out.end() || &it->second == &c) {
      c = cplx(c.real(), 0.0);
      continue;
    }
    const cplx avg = 0.5 * (c + std::conj(it->second));
    c = avg;
    it->second = std::conj(avg);
  }
  return FourierPotential(n, std::move(out));
}

double dirichlet_energy(const FourierPotential& v) {
  double s = 0.0;
  for (const auto& [k, c] : v.coefficients()) s += kTwoPi * kTwoPi * norm2(k) * std::norm(c);
  return s;
}

double dirichlet_energy_quadrature(const FourierPotential& v, int per_axis) {
  const int n = v.dim();
  double s = 0.0;
  long count = 0;
  for_each_point(n, per_axis, [&](std::span<const double> x) {
    for (int j = 0; j < n; ++j) {
      const double g = partial(v, j, x);
      s += g * g;
    }
    ++count;
  });
  return s / static_cast<double>(count);
}

double transport_residual(const DiophantineVector& Q, const FourierPotential& v, const FourierPotential& rhs,
                          double factor, int per_axis) {
  require_dim(Q, v);
  const FourierPotential lhs = directional_derivative(Q, v, factor);
  const int n = v.dim();
  const int pts = n >= 3 ? std::min(per_axis, 32) : per_axis;
  double worst = 0.0;
  for_each_point(n, pts, [&](std::span<const double> x) { worst = std::max(worst, std::abs(lhs(x) - rhs(x))); });
  return worst;
}

ExpansionCoeffs inviscid_coeffs(const FourierPotential& V, const DiophantineVector& Q) {
  ExpansionCoeffs e;
  e.a1 = V.mean();
  const FourierPotential rhs = (V + FourierPotential(V.dim(), {{Wavevector(V.dim(), 0), -e.a1}})) * -1.0;
  FourierPotential v1 = solve_transport(Q, rhs, 1.0);
  e.a2 = 0.5 * dirichlet_energy(v1);
  e.correctors.push_back(std::move(v1));
  return e;
}

ExpansionCoeffs viscous_coeffs(const FourierPotential& V, const DiophantineVector& Q) {
  ExpansionCoeffs e;
  const int n = V.dim();
  const Wavevector zero(n, 0);
  e.a1 = V.mean();
  const FourierPotential rhs1 = (V + FourierPotential(n, {{zero, -e.a1}})) * -1.0;
  FourierPotential v1 = solve_transport(Q, rhs1, 2.0);
  e.a2 = dirichlet_energy(v1);
  FourierPotential v2 = solve_transport(Q, laplacian(v1), 2.0);
  // a2 - |Dv1|^2 has zero mean by the choice of a2; drop the rounding residue at k = 0
  FourierPotential g = gradient_square(v1) * -1.0 + laplacian(v2);
  auto spec = g.coefficients();
  spec.erase(zero);
  FourierPotential v3 = solve_transport(Q, FourierPotential(n, std::move(spec)), 2.0);
  e.correctors = {std::move(v1), std::move(v2), std::move(v3)};
  return e;
}

MeanRecovery recover_mean(std::span<const double> lambdas, std::span<const double> hbar, std::span<const double> h) {
  const std::size_t m = lambdas.size();
  if (m == 0 || hbar.size() != m || h.size() != m) throw precondition_error("recover_mean needs matching nonempty grids");
  MeanRecovery out;
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(lambdas[i] > 0.0)) throw precondition_error("lambda grid must be positive");
    xs[i] = 1.0 / (lambdas[i] * lambdas[i]);
    ys[i] = hbar[i] - h[i];
    out.residuals.push_back(ys[i]);
  }
  // Neville's scheme evaluated at x = 0
  std::vector<double> P = ys;
  for (std::size_t lvl = 1; lvl < m; ++lvl)
    for (std::size_t i = 0; i + lvl < m; ++i)
      P[i] = (xs[i + lvl] * P[i] - xs[i] * P[i + 1]) / (xs[i + lvl] - xs[i]);
  out.value = P[0];
  // the approach to the limit should be monotone in lambda
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lambdas[a] < lambdas[b]; });
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double d0 = ys[order[i]] - ys[order[i - 1]];
    const double d1 = ys[order[i + 1]] - ys[order[i]];
    if (d0 * d1 < 0.0) {
      out.warning = "residuals Hbar - H are not monotone along the lambda grid; extrapolation is unreliable";
      break;
    }
  }
  return out;
}

MeanRecovery recover_mean(const EffectiveCurve& curve, const std::function<double(double)>& h_of_p,
                          std::span<const double> lambdas) {
  std::vector<double> hb, hv;
  for (double l : lambdas) {
    auto it = std::find_if(curve.samples.begin(), curve.samples.end(),
                           [l](const CurveSample& s) { return std::abs(s.p - l) <= 1e-12 * std::max(1.0, l); });
    if (it == curve.samples.end()) throw precondition_error("curve has no sample at lambda = " + std::to_string(l));
    hb.push_back(it->hbar);
    hv.push_back(h_of_p(l));
  }
  return recover_mean(lambdas, hb, hv);
}

bool expansion_indistinguishable(const FourierPotential& V1, const FourierPotential& V2,
                                 std::span<const DiophantineVector> Qs, double tol) {
  for (const auto& Q : Qs) {
    const ExpansionCoeffs e1 = inviscid_coeffs(V1, Q), e2 = inviscid_coeffs(V2, Q);
    if (std::abs(e1.a1 - e2.a1) > tol || std::abs(e1.a2 - e2.a2) > tol) return false;
  }
  return true;
}

}  // namespace effham
