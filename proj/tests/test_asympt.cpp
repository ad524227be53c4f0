#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "effham/asympt.hpp"
#include "effham/errors.hpp"
#include "effham/inviscid1d.hpp"
#include "oracles.hpp"

using namespace effham;
using doctest::Approx;

namespace {

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

// brute-force Diophantine constant over |k|_inf <= K with exponent alpha
double brute_constant(const std::vector<double>& Q, int K, double alpha) {
  double best = INFINITY;
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b) {
      if (a == 0 && b == 0) continue;
      const double norm = std::hypot(a, b);
      best = std::min(best, std::abs(Q[0] * a + Q[1] * b) * std::pow(norm, alpha));
    }
  return best;
}

}  // namespace

TEST_CASE("Diophantine presets") {
  const auto one = make_diophantine(1, "golden");
  CHECK(one.Q == std::vector<double>{1.0});
  CHECK(one.C == Approx(1.0));
  CHECK(one.alpha == 0.0);

  const auto g = make_diophantine(2, "golden", 50);
  CHECK(g.Q[1] == Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(g.alpha == 2.0);
  CHECK(g.C > 0.0);
  CHECK(g.C == Approx(brute_constant(g.Q, 50, 2.0)).epsilon(1e-12));
  for (int a = -50; a <= 50; ++a)
    for (int b = -50; b <= 50; ++b)
      if (a || b) CHECK(std::abs(g.dot({a, b})) >= g.C / std::pow(std::hypot(a, b), 2.0) * (1 - 1e-12));

  const auto sp = make_diophantine(3, "sqrt-primes", 12);
  CHECK(sp.C > 0.0);
  CHECK(sp.dim() == 3);
  CHECK_THROWS_AS(make_diophantine(4, "golden"), precondition_error);
  CHECK_THROWS_AS(make_diophantine(2, "silver"), precondition_error);
  CHECK_THROWS_AS(make_diophantine(std::vector<double>{1.0, 0.5}), domain_error);
}

TEST_CASE("transport solve of a single mode") {
  const auto Q = make_diophantine(2, "golden");
  const auto rhs = FourierPotential::cosine({1, 0}, -1.0);
  const auto v = solve_transport(Q, rhs);
  // v = -sin(2 pi x1)/(2 pi)
  CHECK(std::abs(v.coefficient({1, 0})) == Approx(1.0 / (4.0 * oracle::pi)));
  const std::vector<double> x{0.125, 0.4};
  CHECK(v(x) == Approx(-std::sin(2 * oracle::pi * 0.125) / (2 * oracle::pi)).epsilon(1e-14));
  CHECK(transport_residual(Q, v, rhs, 1.0) <= 1e-14);

  const auto z = solve_transport(Q, FourierPotential(2));
  for (const auto& [k, c] : z.coefficients()) CHECK(c == std::complex<double>(0.0));
}

TEST_CASE("transport solve error paths") {
  const auto Q = make_diophantine(1, "golden");
  FourierPotential::Spectrum s{{{0}, {0.1, 0.0}}, {{1}, {0.5, 0}}, {{-1}, {0.5, 0}}};
  CHECK_THROWS_AS(solve_transport(Q, FourierPotential(1, s)), precondition_error);

  DiophantineVector bad{{1.0, 1.0}, 1.0, 2.0, 5};
  try {
    solve_transport(bad, FourierPotential::cosine({1, -1}, 1.0));
    FAIL("expected a small-divisor error");
  } catch (const small_divisor_error& e) {
    CHECK(std::abs(e.wavevector[0]) == 1);
    CHECK(e.wavevector[0] == -e.wavevector[1]);
  }
}

TEST_CASE("transport residual on random spectra") {
  std::mt19937 rng(3);
  for (int dim : {1, 2}) {
    const auto Q = make_diophantine(dim, "golden");
    for (int rep = 0; rep < 3; ++rep) {
      const auto rhs = random_spectrum(dim, 4, rng);
      for (double factor : {1.0, 2.0}) {
        const auto v = solve_transport(Q, rhs, factor);
        CHECK(transport_residual(Q, v, rhs, factor) <= 1e-10);
      }
    }
  }
}

TEST_CASE("inviscid coefficients") {
  const auto Q2 = make_diophantine(2, "golden");
  const auto c = inviscid_coeffs(FourierPotential::cosine({1, 0}, 1.0), Q2);
  CHECK(std::abs(c.a1) <= 1e-15);
  CHECK(c.a2 == Approx(0.25).epsilon(1e-12));
  CHECK(c.a2 == Approx(0.5 * dirichlet_energy_quadrature(c.correctors.at(0), 256)).epsilon(1e-10));

  FourierPotential::Spectrum k{{{0, 0}, {0.7, 0}}};
  const auto cst = inviscid_coeffs(FourierPotential(2, k), Q2);
  CHECK(cst.a1 == Approx(0.7));
  CHECK(cst.a2 == 0.0);

  const auto Q1 = make_diophantine(1, "golden");
  const auto m = inviscid_coeffs(FourierPotential::cosine({1}, -1.0), Q1);
  CHECK(std::abs(m.a1) <= 1e-15);
  CHECK(m.a2 == Approx(0.25).epsilon(1e-12));
  // in one dimension v1' = a1 - V, so a2 = (1/2) int (V - a1)^2
  const double var = oracle::midpoint([](double x) { return std::pow(std::cos(2 * oracle::pi * x), 2); }, 0, 1, 10000);
  CHECK(m.a2 == Approx(0.5 * var).epsilon(1e-10));
}

TEST_CASE("viscous coefficients") {
  const auto Q1 = make_diophantine(1, "golden");
  const auto c = viscous_coeffs(FourierPotential::cosine({1}, -1.0), Q1);
  CHECK(c.a2 == Approx(0.125).epsilon(1e-12));
  REQUIRE(c.correctors.size() == 3);
  // v1' = cos(2 pi x)/2
  const auto dv1 = directional_derivative(Q1, c.correctors[0]);
  for (double x : oracle::grid(0, 1, 9)) CHECK(dv1(x) == Approx(0.5 * std::cos(2 * oracle::pi * x)).epsilon(1e-13));

  const auto zero = viscous_coeffs(FourierPotential(1), Q1);
  CHECK(zero.a1 == 0.0);
  CHECK(zero.a2 == 0.0);

  const auto Q2 = make_diophantine(2, "golden");
  const auto c2 = viscous_coeffs(FourierPotential::cosine({1, 0}, 1.0), Q2);
  CHECK(c2.a2 == Approx(0.125).epsilon(1e-12));
  CHECK(c2.a2 == Approx(dirichlet_energy_quadrature(c2.correctors[0], 256)).epsilon(1e-10));
}

TEST_CASE("viscous corrector chain solves each equation") {
  std::mt19937 rng(5);
  const auto Q = make_diophantine(2, "golden");
  const auto V = random_spectrum(2, 2, rng);
  const auto c = viscous_coeffs(V, Q);
  const auto& v1 = c.correctors[0];
  const auto& v2 = c.correctors[1];
  const auto& v3 = c.correctors[2];
  FourierPotential::Spectrum a1{{{0, 0}, {c.a1, 0}}};
  FourierPotential::Spectrum a2{{{0, 0}, {c.a2, 0}}};
  CHECK(transport_residual(Q, v1, FourierPotential(2, a1) + V * -1.0, 2.0) <= 1e-10);
  CHECK(transport_residual(Q, v2, laplacian(v1), 2.0) <= 1e-10);
  CHECK(transport_residual(Q, v3, FourierPotential(2, a2) + gradient_square(v1) * -1.0 + laplacian(v2), 2.0) <= 1e-9);
}

TEST_CASE("expansion coefficients are nonnegative and a1 is the mean") {
  std::mt19937 rng(9);
  for (int dim : {1, 2}) {
    const auto Q = make_diophantine(dim, "golden");
    for (int rep = 0; rep < 4; ++rep) {
      FourierPotential V = random_spectrum(dim, 3, rng);
      FourierPotential::Spectrum m{{Wavevector(dim, 0), {0.3 * rep, 0}}};
      V = V + FourierPotential(dim, m);
      const auto a = inviscid_coeffs(V, Q), b = viscous_coeffs(V, Q);
      CHECK(a.a1 == Approx(V.mean()));
      CHECK(b.a1 == Approx(V.mean()));
      CHECK(a.a2 >= 0.0);
      CHECK(b.a2 >= 0.0);
    }
  }
}

TEST_CASE("Parseval against real-space quadrature") {
  std::mt19937 rng(21);
  for (int dim : {1, 2})
    for (int rep = 0; rep < 5; ++rep) {
      const auto v = random_spectrum(dim, 3, rng);
      CHECK(std::abs(dirichlet_energy(v) - dirichlet_energy_quadrature(v, 64)) <= 1e-10 * dirichlet_energy(v));
    }
}

TEST_CASE("gradient square matches pointwise evaluation") {
  std::mt19937 rng(4);
  const auto v = random_spectrum(2, 2, rng);
  const auto g = gradient_square(v);
  const double h = 1e-6;
  for (double x1 : {0.1, 0.6})
    for (double x2 : {0.33, 0.8}) {
      auto at = [&](double a, double b) { return v(std::vector<double>{a, b}); };
      const double d1 = (at(x1 + h, x2) - at(x1 - h, x2)) / (2 * h);
      const double d2 = (at(x1, x2 + h) - at(x1, x2 - h)) / (2 * h);
      CHECK(g(std::vector<double>{x1, x2}) == Approx(d1 * d1 + d2 * d2).epsilon(1e-6));
    }
}

TEST_CASE("mean recovery on the exact sawtooth curve") {
  const auto h = QuasiConvexProfile::quadratic();
  const Potential v = make_sawtooth(0.5);
  const std::vector<double> lambdas{10, 20, 40};
  std::vector<double> hb, hh;
  for (double l : lambdas) {
    hb.push_back(effective_H_quasiconvex(h, v, l));
    hh.push_back(h(l));
  }
  const auto r = recover_mean(lambdas, hb, hh);
  CHECK(r.value == Approx(-0.5).epsilon(1e-3));
  CHECK(!r.warning);

  std::vector<double> zero_hb = hh;
  CHECK(recover_mean(lambdas, zero_hb, hh).value == 0.0);
}

TEST_CASE("non-monotone residuals raise a warning") {
  const std::vector<double> l{10, 20, 40}, hb{1.0, 2.5, 1.9}, h{1.0, 2.0, 2.0};
  CHECK(recover_mean(l, hb, h).warning.has_value());
}

TEST_CASE("second-order coefficient from the exact curve") {
  const auto h = QuasiConvexProfile::quadratic();
  const Potential v(FourierPotential::cosine({1}, -1.0));
  const double a2 = inviscid_coeffs(FourierPotential::cosine({1}, -1.0), make_diophantine(1, "golden")).a2;
  const double lam = 50.0;
  CHECK((effective_H_quasiconvex(h, v, lam) - 0.5 * lam * lam) * lam * lam == Approx(a2).epsilon(4e-3));
}

TEST_CASE("expansion indistinguishability") {
  const std::vector<DiophantineVector> Qs{make_diophantine(1, "golden")};
  // translated potentials share a1 and the spectral energy
  const auto a = FourierPotential::cosine({1}, -1.0);
  const auto b = FourierPotential::sine({1}, 1.0);
  CHECK(expansion_indistinguishable(a, b, Qs));
  CHECK(!expansion_indistinguishable(a, FourierPotential::cosine({1}, -0.9), Qs));
}
