#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/radial.hpp"

using namespace gsmin;

namespace {
double sech(double x) { return 1.0 / std::cosh(x); }
}  // namespace

TEST_CASE("sphere measure") {
  CHECK(sphere_measure(1) == doctest::Approx(2.0));
  CHECK(sphere_measure(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_measure(3) == doctest::Approx(4 * std::numbers::pi));
}

TEST_CASE("mass quadrature") {
  const RadialGrid g1(1, 20.0, 4000);
  CHECK(mass(RadialProfile::zero(g1)) == 0.0);
  const auto s = RadialProfile::sample(g1, [](double r) { return std::sqrt(2.0) * sech(r); });
  CHECK(mass(s) == doctest::Approx(4.0).epsilon(1e-6));
  const RadialGrid g3(3, 12.0, 4000);
  const auto gauss = RadialProfile::sample(g3, [](double r) { return std::exp(-r * r / 2); });
  CHECK(mass(gauss) == doctest::Approx(std::pow(std::numbers::pi, 1.5)).epsilon(1e-6));
}

TEST_CASE("Dirichlet integral") {
  const RadialGrid g1(1, 20.0, 4000);
  CHECK(grad_norm_sq(RadialProfile::zero(g1)) == 0.0);
  const auto s = RadialProfile::sample(g1, [](double r) { return std::sqrt(2.0) * sech(r); });
  CHECK(std::abs(grad_norm_sq(s) - 4.0 / 3.0) < 1e-5);
  // Tent: u = 1 - r/a on [0, a]; exact int_R |u'|^2 = 2 / a, exact on the grid.
  const double a = 5.0;
  const auto tent = RadialProfile::sample(g1, [&](double r) { return r < a ? 1.0 - r / a : 0.0; });
  CHECK(grad_norm_sq(tent) == doctest::Approx(2.0 / a).epsilon(1e-12));
  // Constant then taper in 3D: u = 1 on [0,1], 2 - r on [1,2].
  const RadialGrid g3(3, 4.0, 4000);
  const auto taper = RadialProfile::sample(g3, [](double r) { return r < 1 ? 1.0 : r < 2 ? 2.0 - r : 0.0; });
  CHECK(grad_norm_sq(taper) == doctest::Approx(4 * std::numbers::pi * 7.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("L2 scaling preserves mass and scales the Dirichlet integral") {
  const RadialGrid g(1, 30.0, 6000);
  const auto u = RadialProfile::sample(g, [](double r) { return std::exp(-r * r); });
  const auto same = l2_scaling(0.0, u);
  for (int i = 0; i < u.size(); ++i) CHECK(same[i] == doctest::Approx(u[i]));
  const auto v = l2_scaling(-1.0, u);
  CHECK(mass(v) == doctest::Approx(mass(u)).epsilon(1e-4));
  CHECK(grad_norm_sq(v) / grad_norm_sq(u) == doctest::Approx(std::exp(-2.0)).epsilon(1e-3));
}

TEST_CASE("dilation scaling laws in 3D") {
  const RadialGrid g(3, 16.0, 4000);
  const auto u = RadialProfile::sample(g, [](double r) { return std::exp(-r * r / 2); });
  const auto same = dilate(1.0, u);
  for (int i = 0; i < u.size(); ++i) CHECK(same[i] == doctest::Approx(u[i]));
  const auto v = dilate(2.0, u);
  CHECK(mass(v) / mass(u) == doctest::Approx(8.0).epsilon(1e-3));
  CHECK(grad_norm_sq(v) / grad_norm_sq(u) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("rearrangement") {
  const RadialGrid g(1, 10.0, 2000);
  const auto mono = RadialProfile::sample(g, [](double r) { return std::exp(-r); });
  const auto m2 = schwarz_rearrange(mono);
  for (int i = 0; i < mono.size(); ++i) CHECK(m2[i] == doctest::Approx(mono[i]).epsilon(1e-12));

  const auto two = RadialProfile::sample(g, [](double r) {
    return std::exp(-(r - 3) * (r - 3)) + 0.5 * std::exp(-(r - 7) * (r - 7) * 4);
  });
  const auto s = schwarz_rearrange(two);
  CHECK(std::abs(mass(s) - mass(two)) / mass(two) < 1e-10);
  for (int i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
  CHECK(grad_norm_sq(s) <= grad_norm_sq(two));
  // Sorted values keep the maximum.
  CHECK(s[0] == doctest::Approx(two.sup_norm()).epsilon(1e-3));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0, 1);
  for (int k = 0; k < 100; ++k) {
    const double c = 8 * U(rng), w = 0.2 + U(rng);
    const auto u = RadialProfile::sample(g, [&](double r) { return std::exp(-(r - c) * (r - c) / w) + 0.1 * U(rng); });
    const auto us = schwarz_rearrange(u);
    CHECK(grad_norm_sq(us) <= grad_norm_sq(u) * (1 + 1e-12));
    const auto uss = schwarz_rearrange(us);
    for (int i = 0; i < us.size(); ++i) REQUIRE(uss[i] == us[i]);
  }

  const auto negative = RadialProfile::sample(g, [](double r) { return -std::exp(-r); });
  CHECK_THROWS_AS(schwarz_rearrange(negative), Error);
}

TEST_CASE("profile CSV round trip") {
  const RadialGrid g(2, 5.0, 50);
  const auto u = RadialProfile::sample(g, [](double r) { return std::exp(-r) * 0.123456789; });
  const std::string path = "radial_roundtrip.csv";
  write_profile_csv(u, path);
  const auto v = read_profile_csv(path, g);
  for (int i = 0; i < u.size(); ++i) CHECK(v[i] == u[i]);
  CHECK_THROWS_AS(read_profile_csv("does/not/exist.csv", g), Error);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(RadialGrid(0, 1.0, 10), Error);
  CHECK_THROWS_AS(RadialGrid(1, -1.0, 10), Error);
  CHECK_THROWS_AS(RadialGrid(1, 1.0, 0), Error);
}
