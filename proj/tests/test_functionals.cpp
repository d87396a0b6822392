#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/functionals.hpp"

using namespace gsmin;

namespace {
double sech(double x) { return 1.0 / std::cosh(x); }
const NonlinearityModel cubic = parse_model("single-power:p=4");
}  // namespace

TEST_CASE("energy of the cubic soliton") {
  const RadialGrid g(1, 20.0, 4000);
  CHECK(energy_I(cubic, RadialProfile::zero(g)).I == 0.0);
  const auto w = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  const auto e = energy_I(cubic, w);
  // E_m = -m^3 / 96 at m = 4.
  CHECK(e.I == doctest::Approx(-2.0 / 3.0).epsilon(1e-4));
  CHECK(e.mass == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("energy of a Gaussian against the closed form") {
  const double a = 0.8;
  const RadialGrid g(1, 10.0, 20000);
  const auto u = RadialProfile::sample(g, [&](double r) { return a * std::exp(-r * r); });
  const double sp = std::sqrt(std::numbers::pi);
  // 1/2 a^2 sqrt(pi/2) - a^4 sqrt(pi) / 8 over the line.
  const double exact = 0.5 * a * a * std::sqrt(std::numbers::pi / 2) - std::pow(a, 4) * sp / 8;
  CHECK(std::abs(energy_I(cubic, u).I - exact) < 1e-6);
}

TEST_CASE("action and identity residuals") {
  const RadialGrid g(1, 20.0, 4000);
  const auto zero = action_J(cubic, RadialProfile::zero(g), 1.0);
  CHECK(zero.J == 0.0);
  CHECK(zero.pohozaev_residual == 0.0);
  CHECK(zero.nehari_residual == 0.0);
  const auto w = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  const auto a = action_J(cubic, w, 1.0);
  CHECK(a.J == doctest::Approx(4.0 / 3.0).epsilon(1e-4));
  CHECK(std::abs(a.pohozaev_relative()) <= 1e-4);
  CHECK(std::abs(a.nehari_relative()) <= 1e-4);

  const RadialGrid g3(3, 10.0, 2000);
  const auto gauss = RadialProfile::sample(g3, [](double r) { return std::exp(-r * r); });
  const auto b = action_J(parse_model("cubic-quintic"), gauss, 0.1);
  CHECK(std::abs(b.pohozaev_residual) > 1e-6);
  CHECK(std::abs(b.nehari_residual) > 1e-6);
}

TEST_CASE("multiplier estimate") {
  const RadialGrid g(1, 20.0, 8000);
  const auto w1 = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  CHECK(multiplier_estimate(cubic, w1) == doctest::Approx(1.0).epsilon(1e-4));
  const auto w4 = RadialProfile::sample(g, [](double r) { return 2 * std::sqrt(2.0) * sech(2 * r); });
  CHECK(multiplier_estimate(cubic, w4) == doctest::Approx(4.0).epsilon(1e-3));
  const auto free = NonlinearityModel::custom([](double) { return 0.0; }, 4.0, 4.0, "zero");
  CHECK(multiplier_estimate(free, w1) <= 0.0);
  CHECK(multiplier_estimate(free, w1) ==
        doctest::Approx(-grad_norm_sq(w1) / mass(w1)).epsilon(1e-12));
  CHECK_THROWS_AS(multiplier_estimate(cubic, RadialProfile::zero(g)), Error);
}

TEST_CASE("multiplier positivity check") {
  const RadialGrid g(1, 20.0, 4000);
  const auto w = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  const auto e = energy_I(cubic, w);
  CHECK(multiplier_positivity_check(e, 1, 1.0) == CheckStatus::Pass);
  // Bound is (2/N) |grad v|^2 / m = 2/3.
  const double bound = 2.0 * grad_norm_sq(w) / e.mass;
  CHECK(multiplier_positivity_check(e, 1, bound - 10 * 1e-6) == CheckStatus::Fail);
  EnergyReport positive = e;
  positive.I = 0.5;
  CHECK(multiplier_positivity_check(positive, 1, 1.0) == CheckStatus::NotApplicable);
}

TEST_CASE("Euler-Lagrange residual vanishes on the soliton") {
  const RadialGrid g(1, 20.0, 8000);
  const auto w = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  const double res = euler_lagrange_residual(cubic, w, 1.0);
  CHECK(res < 1e-4);
  CHECK(euler_lagrange_residual(cubic, w, 1.5) > 100 * res);
}
