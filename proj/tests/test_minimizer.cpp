#include <cmath>
#include <fstream>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/minimizer.hpp"

using namespace gsmin;

namespace {
const NonlinearityModel cubic = parse_model("single-power:p=4");
double sech(double x) { return 1.0 / std::cosh(x); }
}  // namespace

TEST_CASE("cubic ground state matches the sech soliton") {
  const RadialGrid g(1, 20.0, 4000);
  const auto r = minimize(cubic, 1, 4.0, g, SolverConfig{});
  REQUIRE(r.converged);
  CHECK(std::abs(r.E + 2.0 / 3.0) <= 1e-3);
  CHECK(std::abs(r.mu - 1.0) <= 1e-3);
  CHECK(r.mass == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.energy_monotone);
  double dev = 0.0;
  for (int i = 0; i < r.profile.size(); ++i)
    dev = std::max(dev, std::abs(std::abs(r.profile[i]) - std::sqrt(2.0) * sech(g.r(i))));
  CHECK(dev < 1e-3);
}

TEST_CASE("soliton family energy at m = 2") {
  const RadialGrid g(1, 30.0, 6000);
  const auto r = minimize(cubic, 1, 2.0, g, SolverConfig{});
  REQUIRE(r.converged);
  CHECK(std::abs(r.E + 8.0 / 96.0) <= 5e-4);
}

TEST_CASE("below the critical mass the flow does not certify negative energy") {
  const RadialGrid g(3, 40.0, 2000);
  SolverConfig cfg;
  cfg.max_iter = 20000;
  const auto r = minimize(parse_model("cubic-quintic"), 3, 100.0, g, cfg);
  CHECK((!r.converged || r.E >= -10 * cfg.tol));
}

TEST_CASE("energy curve law and determinism") {
  const RadialGrid g(1, 40.0, 8000);
  const std::vector<double> masses{1, 2, 3, 4};
  const auto rows = energy_curve(cubic, 1, masses, g, SolverConfig{});
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    REQUIRE(row.converged());
    const double exact = -row.m * row.m * row.m / 96.0;
    CHECK(std::abs(row.result->E - exact) <= 5e-3 * std::abs(exact));
  }
  const auto dup = energy_curve(cubic, 1, {2.0, 2.0}, g, SolverConfig{});
  CHECK(std::abs(dup[0].result->E - dup[1].result->E) <= 1e-6);
  CHECK_THROWS_AS(energy_curve(cubic, 1, {2.0, 1.0}, g, SolverConfig{}), Error);
  CHECK(energy_curve(cubic, 1, {}, g, SolverConfig{}).empty());
}

TEST_CASE("restarts are reproducible regardless of worker count") {
  const RadialGrid g(1, 20.0, 2000);
  SolverConfig a;
  a.restarts = 4;
  a.init = InitKind::RandomBump;
  a.workers = 1;
  SolverConfig b = a;
  b.workers = 4;
  const auto ra = minimize(cubic, 1, 3.0, g, a);
  const auto rb = minimize(cubic, 1, 3.0, g, b);
  CHECK(ra.E == rb.E);
  CHECK(ra.restart_index == rb.restart_index);
  for (int i = 0; i < ra.profile.size(); ++i) REQUIRE(ra.profile[i] == rb.profile[i]);
}

TEST_CASE("sign and monotonicity diagnostics") {
  const RadialGrid g(1, 20.0, 2000);
  const auto sech_p = RadialProfile::sample(g, [](double r) { return std::sqrt(2.0) * sech(r); });
  const auto s = sign_monotonicity_check(sech_p);
  CHECK(s.constant_sign);
  CHECK(s.nonincreasing_modulus);
  const auto changing = RadialProfile::sample(g, [](double r) { return std::cos(r) * std::exp(-r * r / 20); });
  CHECK_FALSE(sign_monotonicity_check(changing).constant_sign);
  const auto cq = minimize(parse_model("cubic-quintic"), 1, 10.0, RadialGrid(1, 60.0, 6000), SolverConfig{});
  REQUIRE(cq.converged);
  const auto c = sign_monotonicity_check(cq);
  CHECK(c.constant_sign);
  CHECK(c.nonincreasing_modulus);
}

TEST_CASE("solver configuration validation") {
  const RadialGrid g(1, 20.0, 400);
  SolverConfig bad;
  bad.dt = -1;
  CHECK_THROWS_AS(minimize(cubic, 1, 1.0, g, bad), Error);
  CHECK_THROWS_AS(minimize(cubic, 1, -1.0, g, SolverConfig{}), Error);
  CHECK_THROWS_AS(minimize(cubic, 2, 1.0, g, SolverConfig{}), Error);
  SolverConfig file;
  file.init = InitKind::File;
  CHECK_THROWS_AS(minimize(cubic, 1, 1.0, g, file), Error);
}

TEST_CASE("results CSV") {
  const RadialGrid g(1, 20.0, 1000);
  auto rows = energy_curve(cubic, 1, {1.0, 2.0}, g, SolverConfig{});
  write_results_csv(rows, "results.csv");
  std::ifstream in("results.csv");
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "m,E,mu,kinetic,potential,pohozaev_residual,nehari_residual,iterations,converged");
  int n = 0;
  while (std::getline(in, line)) ++n;
  CHECK(n == 2);
}
