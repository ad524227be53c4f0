#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "effham/errors.hpp"
#include "effham/potential.hpp"
#include "oracles.hpp"

using namespace effham;
using doctest::Approx;

namespace {

FourierPotential minus_cos(int k = 1) { return FourierPotential::cosine({k}, -1.0); }

}  // namespace

TEST_CASE("periodic evaluation of the sawtooth") {
  const Potential v = make_sawtooth(0.5);
  CHECK(eval_periodic(v, 0.25) == Approx(-0.5).epsilon(1e-15));
  CHECK(eval_periodic(v, 1.25) == Approx(-0.5).epsilon(1e-15));
  CHECK(eval_periodic(v, -0.75) == Approx(-0.5).epsilon(1e-15));
  CHECK(eval_periodic(Potential(minus_cos()), 0.0) == Approx(-1.0));
}

TEST_CASE("sawtooth construction") {
  const auto v = make_sawtooth(0.5);
  REQUIRE(v.breakpoints().size() == 3);
  CHECK(v.breakpoints()[1] == 0.5);
  CHECK(v.values()[0] == 0.0);
  CHECK(v.values()[1] == -1.0);
  CHECK(v.values()[2] == 0.0);

  const auto v2 = make_sawtooth(0.2);
  CHECK(v2(0.2) == Approx(-1.0));
  CHECK(v2(0.1) == Approx(-0.5));
  CHECK(make_sawtooth(0.7)(0.85) == Approx(-0.5));

  CHECK_THROWS_AS(make_sawtooth(0.0), domain_error);
  CHECK_THROWS_AS(make_sawtooth(1.0), domain_error);
  CHECK_THROWS_AS(make_sawtooth(-0.3), domain_error);
}

TEST_CASE("malformed piecewise potentials are rejected") {
  CHECK_THROWS_AS(PiecewiseLinearPotential({0.0, 0.5, 1.0}, {0.0, -1.0, 0.2}), precondition_error);
  CHECK_THROWS_AS(PiecewiseLinearPotential({0.0, 0.6, 0.5, 1.0}, {0, -1, -1, 0}), precondition_error);
  CHECK_THROWS_AS(PiecewiseLinearPotential({0.1, 1.0}, {0, 0}), precondition_error);
}

TEST_CASE("Hermitian symmetry is enforced on spectra") {
  FourierPotential::Spectrum bad{{{1}, {1.0, 0.0}}, {{-1}, {0.5, 0.0}}};
  CHECK_THROWS_AS(FourierPotential(1, bad), precondition_error);
  FourierPotential::Spectrum complex_mean{{{0}, {0.0, 1.0}}};
  CHECK_THROWS_AS(FourierPotential(1, complex_mean), precondition_error);
  const auto s = FourierPotential::sine({1}, 1.0);
  CHECK(s.coefficient({-1}) == std::conj(s.coefficient({1})));
  CHECK(s(0.25) == Approx(1.0));
}

TEST_CASE("sawtooth CDF is 1 + t against brute-force counting") {
  for (double s : {0.1, 0.2, 0.5, 0.8, 0.9}) {
    const auto v = make_sawtooth(s);
    const auto F = cdf(v);
    for (double t : oracle::grid(-1.0, 0.0, 21)) {
      CHECK(std::abs(F(t) - (1.0 + t)) <= 1e-15);
    }
  }
  const auto v = make_sawtooth(0.3);
  const auto F = cdf(v);
  for (double t : {-0.9, -0.5, -0.13}) CHECK(std::abs(F(t) - oracle::measure_below(v, t)) <= 2e-6);
}

TEST_CASE("CDF of the zero potential is a unit step") {
  const auto F = cdf(PiecewiseLinearPotential::zero());
  CHECK(F(-1e-9) == 0.0);
  CHECK(F(0.0) == 1.0);
  CHECK(F(5.0) == 1.0);
  CHECK(F.left_limit(0.0) == 0.0);
}

TEST_CASE("one-well multiwell equals the sawtooth") {
  const auto w = make_multiwell({0.0, 1.0}, {0.3});
  CHECK(cdf_distance(cdf(w), cdf(make_sawtooth(0.3))) == 0.0);
}

TEST_CASE("CDF distance examples") {
  const auto f02 = cdf(make_sawtooth(0.2)), f08 = cdf(make_sawtooth(0.8)), f05 = cdf(make_sawtooth(0.5));
  const auto f0 = cdf(PiecewiseLinearPotential::zero());
  CHECK(cdf_distance(f02, f08) <= 1e-15);
  CHECK(cdf_distance(f0, f0) == 0.0);
  CHECK(cdf_distance(f05, f0) == Approx(1.0));
}

TEST_CASE("CDF distance is a pseudometric") {
  std::vector<DistributionFunction> fs{cdf(make_sawtooth(0.3)), cdf(make_vhat2()),
                                       cdf(PiecewiseLinearPotential::from_points({{0, 0}, {0.4, -0.5}, {1, 0}})),
                                       cdf(Potential(minus_cos()), 2048), cdf(PiecewiseLinearPotential::zero())};
  for (const auto& a : fs) {
    CHECK(cdf_distance(a, a) == 0.0);
    for (const auto& b : fs) {
      CHECK(cdf_distance(a, b) == Approx(cdf_distance(b, a)).epsilon(1e-15));
      for (const auto& c : fs) CHECK(cdf_distance(a, c) <= cdf_distance(a, b) + cdf_distance(b, c) + 1e-15);
    }
  }
}

TEST_CASE("sampled CDF of a spectral potential converges at the documented rate") {
  // -cos(2 pi x) has F(t) = 1 - acos(t)/pi on [-1, 1]
  const Potential v(minus_cos());
  auto exact = [](double t) { return 1.0 - std::acos(t) / oracle::pi; };
  for (std::size_t res : {256u, 4096u}) {
    const auto F = cdf(v, res);
    double worst = 0.0;
    for (double t : oracle::grid(-0.99, 0.99, 41)) worst = std::max(worst, std::abs(F(t) - exact(t)));
    CHECK(worst <= 4.0 / static_cast<double>(res));
  }
  CHECK_THROWS_AS(cdf(v, 1), precondition_error);
}

TEST_CASE("monotone-piece distributions of the sawtooth") {
  const double s = 0.35;
  const auto v = make_sawtooth(s);
  const auto mp = monotone_piece_cdfs(v);
  for (double t : oracle::grid(-1.0, 0.0, 11)) {
    CHECK(mp.decreasing(t) == Approx(s * (1 + t)).epsilon(1e-14));
    CHECK(mp.increasing(t) == Approx((1 - s) * (1 + t)).epsilon(1e-14));
  }
  for (double t : {-0.7, -0.2}) {
    CHECK(std::abs(mp.decreasing(t) - oracle::measure_below_monotone(v, t, -1)) <= 3e-6);
    CHECK(std::abs(mp.increasing(t) - oracle::measure_below_monotone(v, t, +1)) <= 3e-6);
  }
}

TEST_CASE("monotone pieces sum to the full CDF") {
  for (const auto& v : {make_vhat2(), make_multiwell({0, 0.5, 1}, {0.2, 0.7}), make_sawtooth(0.6),
                        PiecewiseLinearPotential::from_points({{0, 0}, {0.1, -1}, {0.2, -0.3}, {0.6, -0.9}, {1, 0}})}) {
    const auto mp = monotone_piece_cdfs(v);
    const auto F = cdf(v);
    for (double t : oracle::grid(-1.0, 0.0, 101)) CHECK(std::abs(mp.decreasing(t) + mp.increasing(t) - F(t)) <= 1e-12);
  }
}

TEST_CASE("balanced multiwell has the sawtooth's monotone-piece distributions") {
  // each well puts 0.4 of its length on the descent
  const auto vhat = make_multiwell({0, 0.3, 1}, {0.12, 0.58});
  const auto a = monotone_piece_cdfs(vhat), b = monotone_piece_cdfs(make_sawtooth(0.4));
  CHECK(cdf_distance(a.decreasing, b.decreasing) <= 1e-14);
  CHECK(cdf_distance(a.increasing, b.increasing) <= 1e-14);
}

TEST_CASE("two-well preset shares the monotone-piece distributions of V_1/2") {
  const auto a = monotone_piece_cdfs(make_vhat2()), b = monotone_piece_cdfs(make_sawtooth(0.5));
  CHECK(cdf_distance(a.decreasing, b.decreasing) <= 1e-14);
  CHECK(cdf_distance(a.increasing, b.increasing) <= 1e-14);
  CHECK(a.decreasing.total_mass() == Approx(0.5));
}

TEST_CASE("balance totals") {
  auto [d, i] = balance_totals(make_sawtooth(0.27));
  CHECK(d == Approx(0.27));
  CHECK(i == Approx(0.73));
  std::tie(d, i) = balance_totals(make_vhat2());
  CHECK(d == Approx(0.5).epsilon(1e-15));
  CHECK(i == Approx(0.5).epsilon(1e-15));
  std::tie(d, i) = balance_totals(make_multiwell({0, 1}, {0.3}));
  CHECK(d == Approx(0.3));
  CHECK(d + i == Approx(1.0));
}

TEST_CASE("monotone-piece decomposition rejects other shapes") {
  CHECK_THROWS_AS(monotone_piece_cdfs(PiecewiseLinearPotential::from_points({{0, 0}, {0.5, -0.5}, {1, 0}})),
                  shape_error);
  CHECK_THROWS_AS(monotone_piece_cdfs(PiecewiseLinearPotential::from_points(
                      {{0, 0}, {0.3, -1}, {0.5, -1}, {1, 0}})),
                  shape_error);
  CHECK_THROWS_AS(make_multiwell({0, 0.5, 1}, {0.6, 0.7}), shape_error);
}

TEST_CASE("Fourier coefficients of piecewise-linear potentials") {
  const auto z = fourier_coefficients(PiecewiseLinearPotential::zero(), 8);
  for (const auto& [k, c] : z.coefficients()) CHECK(std::abs(c) <= 1e-15);

  const auto v = make_sawtooth(0.5);
  const auto f = fourier_coefficients(v, 9);
  CHECK(f.mean() == Approx(-0.5).epsilon(1e-15));
  for (int k = 1; k <= 9; ++k) {
    const auto q = oracle::fourier_coefficient(v, k);
    CHECK(std::abs(f.coefficient({k}) - q) <= 1e-9);
    if (k % 2 == 0) CHECK(std::abs(f.coefficient({k})) <= 1e-14);
  }

  const auto w = make_vhat2();
  const auto fw = fourier_coefficients(w, 6);
  for (int k = -6; k <= 6; ++k) CHECK(std::abs(fw.coefficient({k}) - oracle::fourier_coefficient(w, k)) <= 1e-9);
}

TEST_CASE("truncated Fourier series converge to the potential") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs(64);
  for (double& x : xs) x = u(rng);
  const auto v = make_vhat2();
  double prev = INFINITY;
  for (int K : {4, 16, 64, 256}) {
    const auto f = fourier_coefficients(v, K);
    double worst = 0.0;
    for (double x : xs) worst = std::max(worst, std::abs(f(x) - v(x)));
    CHECK(worst < prev);
    CHECK(worst * K <= 2.0);
    prev = worst;
  }
}

TEST_CASE("extrema, mean and local maxima") {
  const Potential v(minus_cos());
  CHECK(v.min() == Approx(-1.0).epsilon(1e-12));
  CHECK(v.max() == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(v.mean()) <= 1e-15);
  REQUIRE(v.local_maxima().size() == 1);
  CHECK(v.local_maxima()[0] == Approx(0.5).epsilon(1e-9));

  const Potential w = make_vhat2();
  CHECK(w.max() == 0.0);
  CHECK(w.min() == -1.0);
  CHECK(w.mean() == Approx(oracle::midpoint([&](double x) { return w(x); }, 0, 1, 100000)).epsilon(1e-9));
}

TEST_CASE("transforms preserve the distribution") {
  const Potential v = make_vhat2();
  const auto F = cdf(v);
  CHECK(cdf_distance(F, cdf(translate(v, 0.37))) <= 1e-12);
  CHECK(cdf_distance(F, cdf(reflect(v))) <= 1e-12);
  CHECK(cdf_distance(F, cdf(compress(v, 3))) <= 1e-12);
  CHECK(translate(v, 0.37)(0.1) == Approx(v(0.47)));
  CHECK(reflect(v)(0.1) == Approx(v(0.9)));
  CHECK(compress(v, 2)(0.3) == Approx(v(0.6)));
  CHECK(add_constant(v, 2.0).max() == Approx(2.0));
  CHECK(scale(v, 3.0).min() == Approx(-3.0));
}
