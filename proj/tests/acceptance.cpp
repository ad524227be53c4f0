// Acceptance suite: one test case per criterion, each printing a single
// PASS/FAIL line with the measured quantity next to its pinned bound.
// Values are recomputed here from the library API and the oracles, not read
// back from the experiment registry.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "effham/asympt.hpp"
#include "effham/cellpde.hpp"
#include "effham/hill.hpp"
#include "effham/inviscid1d.hpp"
#include "oracles.hpp"

using namespace effham;

namespace {

const auto kQuad = QuasiConvexProfile::quadratic();
const Potential kZero = PiecewiseLinearPotential::zero();

// measured <= bound unless `relation` says otherwise
bool verdict(int id, const char* title, const char* quantity, double measured, const char* relation, double bound) {
  bool ok = false;
  const std::string r = relation;
  if (r == "<=") ok = measured <= bound;
  else if (r == "<") ok = measured < bound;
  else if (r == ">=") ok = measured >= bound;
  else if (r == ">") ok = measured > bound;
  std::printf("%s [%2d] %s: %s = %.6g %s %.6g\n", ok ? "PASS" : "FAIL", id, title, quantity, measured, relation, bound);
  std::fflush(stdout);
  return ok;
}

// Value at 0 of the polynomial through (x_i, y_i), by Neville's scheme.
double extrapolate_to_zero(std::vector<double> x, std::vector<double> y) {
  const std::size_t n = x.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i) y[i] = (x[i + m] * y[i] - x[i] * y[i + 1]) / (x[i + m] - x[i]);
  return y[0];
}

FourierPotential random_spectrum(int dim, int K, std::mt19937& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  FourierPotential::Spectrum c;
  auto visit = [&](const Wavevector& k) {
    Wavevector neg(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) neg[i] = -k[i];
    if (c.count(neg) || std::all_of(k.begin(), k.end(), [](int x) { return x == 0; })) return;
    const std::complex<double> a(g(rng), g(rng));
    c[k] = a;
    c[neg] = std::conj(a);
  };
  if (dim == 1) {
    for (int k = -K; k <= K; ++k) visit({k});
  } else {
    for (int k1 = -K; k1 <= K; ++k1)
      for (int k2 = -K; k2 <= K; ++k2) visit({k1, k2});
  }
  return {dim, c};
}

}  // namespace

TEST_CASE("criterion 01: viscous baseline with zero potential") {
  double worst = 0.0, worst_delta = 0.0;
  for (double p : oracle::grid(0.0, 3.0, 7)) {
    worst = std::max(worst, std::abs(viscous_effective_H(kZero, p) - p * p));
    // closed-form discriminant below the spectrum
    worst_delta = std::max(worst_delta, std::abs(discriminant(kZero, -p * p) - 2.0 * std::cosh(p)) / std::cosh(p));
  }
  CHECK(verdict(1, "hill baseline", "max |Hbar - p^2|", worst, "<=", 1e-6));
  CHECK(worst_delta <= 1e-9);
}

TEST_CASE("criterion 02: equal distributions give equal curves") {
  const auto ps = oracle::grid(-3.0, 3.0, 60);
  const auto ref = effective_curve_quasiconvex(kQuad, make_sawtooth(0.5), ps);
  double worst = 0.0;
  for (double s : {0.2, 0.8}) {
    const auto c = effective_curve_quasiconvex(kQuad, make_sawtooth(s), ps);
    for (std::size_t i = 0; i < ps.size(); ++i) worst = std::max(worst, std::abs(c.samples[i].hbar - ref.samples[i].hbar));
  }
  const Potential v = make_vhat2();
  const auto a = effective_curve_quasiconvex(kQuad, v, ps), b = effective_curve_quasiconvex(kQuad, compress(v, 2), ps);
  for (std::size_t i = 0; i < ps.size(); ++i) worst = std::max(worst, std::abs(a.samples[i].hbar - b.samples[i].hbar));
  CHECK(verdict(2, "distribution invariance", "max curve deviation", worst, "<=", 1e-8));
}

TEST_CASE("criterion 03: closed form for the absolute value") {
  const Potential v = make_sawtooth(0.5);
  double worst = 0.0;
  for (double p : oracle::grid(-3.0, 3.0, 40))
    worst = std::max(worst, std::abs(effective_H_quasiconvex(QuasiConvexProfile::absolute(), v, p) -
                                     std::max(0.0, std::abs(p) - 0.5)));
  CHECK(verdict(3, "abs closed form", "max |Hbar - max(0, |p| + mean V)|", worst, "<=", 1e-10));
}

TEST_CASE("criterion 04: flat edge separates the sawtooth family") {
  const auto P = make_default_F();
  double worst = 0.0, min_gap = INFINITY, prev = -INFINITY;
  for (double s : oracle::grid(0.1, 0.9, 9)) {
    const double e = pplus_sawtooth(P, s);
    worst = std::max(worst, std::abs(e - (57.0 + 5.0 * s) / 36.0));
    min_gap = std::min(min_gap, e - prev);
    prev = e;
  }
  CHECK(verdict(4, "p+ separation", "max |p+(s) - (57+5s)/36|", worst, "<=", 1e-9));
  CHECK(min_gap > 0.0);
}

TEST_CASE("criterion 05: counterexample value for the two-well preset") {
  const auto P = make_default_F();
  const double diff = pplus_sawtooth(P, 0.5) - pplus_multiwell(P, make_vhat2());
  std::printf("       p+(V_1/2) - p+(two-well) = %.12f, stated value -7/270 = %.12f\n", diff, -7.0 / 270.0);
  CHECK(verdict(5, "counterexample value", "|diff - (-7/270)|", std::abs(diff + 7.0 / 270.0), "<=", 1e-8));
}

TEST_CASE("criterion 06: macroscopic indistinguishability") {
  const auto vhat = make_multiwell({0.0, 0.5, 1.0}, {0.2, 0.7});
  const auto vs = make_sawtooth(0.4);
  CellOptions opt;
  opt.N = 400;
  opt.T = 60;
  opt.estimate_error = false;
  double worst = 0.0;
  for (const auto& H : {as_hamiltonian(kQuad), as_hamiltonian(make_default_F())})
    for (double p : {0.0, 0.8, 1.6, 2.4})
      worst = std::max(worst, std::abs(effective_H_numeric(H, vhat, p, opt).value - effective_H_numeric(H, vs, p, opt).value));
  const auto a = monotone_piece_cdfs(vhat), b = monotone_piece_cdfs(vs);
  const double cdf_gap = std::max(cdf_distance(a.decreasing, b.decreasing), cdf_distance(a.increasing, b.increasing));
  const bool ok1 = verdict(6, "indistinguishability", "max |numeric(Vhat) - numeric(V_0.4)|", worst, "<=", 2e-2);
  CHECK(ok1);
  CHECK(cdf_gap <= 1e-14);
}

TEST_CASE("criterion 07: mean recovery and the second-order coefficient") {
  const std::vector<double> lambdas{10, 20, 40};
  std::vector<double> hb, hh;
  const Potential v = make_sawtooth(0.5);
  for (double l : lambdas) {
    hb.push_back(effective_H_quasiconvex(kQuad, v, l));
    hh.push_back(kQuad(l));
  }
  const auto mean = recover_mean(lambdas, hb, hh);
  const FourierPotential mc = FourierPotential::cosine({1}, -1.0);
  const auto co = inviscid_coeffs(mc, make_diophantine(1, "golden"));
  const double lam = 50.0;
  const double second = (effective_H_quasiconvex(kQuad, Potential(mc), lam) - kQuad(lam) - co.a1) * lam * lam;
  const double err = std::max(std::abs(mean.value + 0.5), std::abs(second - co.a2));
  CHECK(verdict(7, "mean recovery", "max(|mean + 1/2|, |second-order - a2|)", err, "<=", 1e-3));
  CHECK(co.a2 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("criterion 08: viscous expansion") {
  const FourierPotential mc = FourierPotential::cosine({1}, -1.0);
  const auto co = viscous_coeffs(mc, make_diophantine(1, "golden"));
  std::vector<double> x, y;
  for (double p : {20.0, 30.0, 40.0}) {
    x.push_back(1.0 / (p * p));
    y.push_back((viscous_effective_H(Potential(mc), p) - p * p - co.a1) * p * p);
  }
  const double limit = extrapolate_to_zero(x, y);
  CHECK(verdict(8, "viscous expansion", "|extrapolated (Hbar - p^2 - a1) p^2 - 1/8|", std::abs(limit - 0.125), "<=",
                1e-2));
  CHECK(co.a2 == doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("criterion 09: spectral identities") {
  const std::vector<Potential> vs{kZero, Potential(FourierPotential::cosine({1}, -1.0)), Potential(make_sawtooth(0.3)),
                                  Potential(make_vhat2()),
                                  Potential(FourierPotential::cosine({2}, 1.5) + FourierPotential::sine({1}, 0.4))};
  double det_err = 0.0;
  for (const auto& v : vs)
    for (double lam : oracle::grid(-15.0, 80.0, 20)) det_err = std::max(det_err, std::abs(monodromy(v, lam).det() - 1.0));
  const auto grid = oracle::grid(-10.0, 40.0, 26);
  const Potential mc(FourierPotential::cosine({1}, -1.0));
  const double iso = std::max({isospectral_distance(mc, translate(mc, 0.37), grid),
                               isospectral_distance(make_vhat2(), translate(make_vhat2(), 0.37), grid),
                               isospectral_distance(make_sawtooth(0.3), make_sawtooth(0.7), grid)});
  const double apart = isospectral_distance(mc, Potential(FourierPotential::cosine({2}, -1.0)), grid);
  const bool ok = det_err <= 1e-9 && iso <= 1e-8 && apart >= 1e-2;
  std::printf("%s [ 9] spectral identities: max |det - 1| = %.3g <= 1e-09, isospectral pairs %.3g <= 1e-08, "
              "cos 2pi x vs cos 4pi x %.3g >= 0.01\n",
              ok ? "PASS" : "FAIL", det_err, iso, apart);
  CHECK(ok);
}

TEST_CASE("criterion 10: sandwich bounds for every method") {
  double worst = -INFINITY;  // largest violation; <= 0 means all inside
  auto track = [&](double hb, double lower, double upper, double tol) {
    worst = std::max({worst, lower - tol - hb, hb - upper - tol});
  };
  const std::vector<Potential> vs{Potential(make_sawtooth(0.4)), Potential(make_vhat2()),
                                  Potential(FourierPotential::cosine({1}, -1.0))};
  const auto ps = oracle::grid(-3.0, 3.0, 13);
  for (const auto& v : vs) {
    for (const auto& h : {kQuad, QuasiConvexProfile::absolute(), QuasiConvexProfile::power(1.5, 0.5)})
      for (const auto& s : effective_curve_quasiconvex(h, v, ps).samples) track(s.hbar, h(s.p) + v.min(), h(s.p) + v.max(), s.err);
    for (const auto& s : viscous_curve(v, ps).samples) track(s.hbar, s.p * s.p + v.mean(), s.p * s.p + v.max(), s.err);
    CellOptions opt;
    opt.N = 100;
    const auto P = make_default_F();
    for (double p : {-2.0, 0.0, 1.0, 2.5}) {
      const auto r = effective_H_numeric(as_hamiltonian(P), v, p, opt);
      track(r.value, P(p) + v.min(), P(p) + v.max(), r.error);
    }
  }
  const auto P = make_default_F();
  for (double s : {0.3, 0.5}) {
    // the flat piece of F(|p|) sits at level 0 = max V
    const double edge = pplus_sawtooth(P, s);
    for (double p : oracle::grid(0.0, edge, 5)) track(0.0, P(p) - 1.0, P(p), 0.0);
  }
  CHECK(verdict(10, "sandwich bounds", "largest violation", worst + 0.0, "<=", 0.0));
}

TEST_CASE("criterion 11: transport solves and Parseval") {
  std::mt19937 rng(2024);
  double residual = 0.0, parseval = 0.0;
  const auto Q2 = make_diophantine(2, "golden");
  for (int rep = 0; rep < 5; ++rep) {
    const auto V = random_spectrum(2, 3, rng);
    const auto co = inviscid_coeffs(V, Q2);
    FourierPotential::Spectrum a1{{{0, 0}, {co.a1, 0}}};
    const auto rhs = FourierPotential(2, a1) + V * -1.0;
    residual = std::max(residual, transport_residual(Q2, co.correctors[0], rhs, 1.0));
    parseval = std::max(parseval, std::abs(co.a2 - 0.5 * dirichlet_energy_quadrature(co.correctors[0], 64)));
  }
  const auto one = FourierPotential::cosine({1, 0}, 1.0);
  const double single = std::max(std::abs(inviscid_coeffs(one, Q2).a2 - 0.25), std::abs(viscous_coeffs(one, Q2).a2 - 0.125));
  const bool ok = residual <= 1e-10 && parseval <= 1e-10 && single <= 1e-12;
  std::printf("%s [11] transport/Parseval: residual %.3g <= 1e-10, |spectral - quadrature a2| %.3g <= 1e-10, "
              "single-mode a2 error %.3g <= 1e-12\n",
              ok ? "PASS" : "FAIL", residual, parseval, single);
  CHECK(ok);
}

TEST_CASE("criterion 12: small-error shadow on the exact curve") {
  const Potential v = make_sawtooth(0.5);
  const double h = 1e-4;
  std::vector<double> vals;
  for (double lam : {10.0, 20.0, 50.0}) {
    const double slope = (effective_H_quasiconvex(kQuad, v, lam + h) - effective_H_quasiconvex(kQuad, v, lam - h)) / (2 * h);
    vals.push_back(std::abs(lam * lam - lam * slope));
  }
  const bool decreasing = vals[1] < vals[0] && vals[2] < vals[1];
  CHECK(verdict(12, "small-error shadow", "|lambda^2 - lambda Hbar'| at 50", vals[2], "<=", 5e-3));
  CHECK(decreasing);
}

TEST_CASE("criterion 13: numeric solver against the exact quadrature") {
  const auto start = std::chrono::steady_clock::now();
  const auto H = as_hamiltonian(kQuad);
  const Potential v = make_sawtooth(0.5);
  double worst = 0.0;
  bool trend = true;
  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    std::vector<double> est;
    for (int N : {200, 400, 800}) {
      CellOptions opt;
      opt.N = N;
      opt.drift_tol = 1e-8;
      opt.estimate_error = false;
      est.push_back(effective_H_numeric(H, v, p, opt).value);
    }
    worst = std::max(worst, std::abs(est[1] - effective_H_quasiconvex(kQuad, v, p)));
    const double coarse = std::abs(est[0] - est[1]), fine = std::abs(est[1] - est[2]);
    // p = 0 is resolved exactly on every grid; both differences are rounding
    if (fine > 1e-10) trend = trend && fine < coarse;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = worst <= 2e-2 && trend && seconds <= 30.0;
  std::printf("%s [13] cellpde cross-validation: max |numeric(400) - exact| = %.3g <= 0.02, trend %s, %.1f s <= 30 s\n",
              ok ? "PASS" : "FAIL", worst, trend ? "decreasing" : "NOT decreasing", seconds);
  CHECK(ok);
}
