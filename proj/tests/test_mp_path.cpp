#include <cmath>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/mp_path.hpp"

using namespace gsmin;

namespace {
const NonlinearityModel cubic = parse_model("single-power:p=4");
const NonlinearityModel p3 = parse_model("single-power:p=3");
const NonlinearityModel cq = parse_model("cubic-quintic");

const ShootResult& witness3() {
  static const ShootResult w = ground_state_radial(cubic, 3, 1.0, 1);
  return w;
}
const ShootResult& witness2() {
  static const ShootResult w = ground_state_radial(p3, 2, 1.0, 1);
  return w;
}
}  // namespace

TEST_CASE("dilation path follows the closed-form action") {
  const auto& w = witness3();
  REQUIRE(w.decayed());
  const double K = w.integrals.grad_sq;
  const auto d = dilation_path(cubic, w, 64, w.mass);
  CHECK(d.max_mismatch <= 1e-6);
  double best = -1e300, t_best = 0.0;
  for (const auto& s : d.samples) {
    CHECK(s.action_formula == doctest::Approx(0.5 * (s.t - s.t * s.t * s.t / 3.0) * K).epsilon(1e-12));
    CHECK(std::abs(s.action - s.action_formula) <= 1e-5 * K);
    if (s.t > 0) CHECK(s.mass == doctest::Approx(s.t * s.t * s.t * w.mass).epsilon(1e-6));
    if (s.action > best) best = s.action, t_best = s.t;
  }
  CHECK(t_best == doctest::Approx(1.0));
  CHECK(best == doctest::Approx(K / 3.0).epsilon(1e-6));
  CHECK(d.samples.back().action < -1.0);
  CHECK(d.samples.back().mass > w.mass);

  const auto c = check_path(d.samples, w.action, 0.1, w.mass);
  CHECK(c.ok());
}

TEST_CASE("path checks reject truncated paths and unreachable masses") {
  const auto& w = witness3();
  auto d = dilation_path(cubic, w, 64, w.mass);
  std::vector<PathSample> head;
  for (const auto& s : d.samples)
    if (s.t <= 1.0) head.push_back(s);
  const auto c = check_path(head, w.action, 0.1, w.mass);
  CHECK_FALSE(c.endpoints);
  REQUIRE_FALSE(c.reasons.empty());
  CHECK(c.reasons.front().rfind("(i)", 0) == 0);

  const auto far = check_path(d.samples, w.action, 0.1, 1e9);
  CHECK_FALSE(far.mass_increasing);
  bool tagged = false;
  for (const auto& r : far.reasons) tagged |= r.rfind("(iii)", 0) == 0;
  CHECK(tagged);

  auto bumped = d.samples;
  bumped[bumped.size() / 4].action = w.action + 1.0;
  CHECK_FALSE(check_path(bumped, w.action, 0.1, w.mass).maximum);
}

TEST_CASE("plateau path on the line for the soliton") {
  const auto w = shoot_1d(cubic, 1.0, 1);
  REQUIRE(w.decayed());
  const auto p = plateau_path_1d(cubic, w, 64, w.mass);
  CHECK(p.J_w == doctest::Approx(4.0 / 3.0).epsilon(1e-4));
  CHECK(p.bound_ok);
  CHECK(p.eps > 0.0);
  CHECK(std::isfinite(p.log_T));
  CHECK(p.samples.front().t == 0.0);
  CHECK(p.samples.front().action == 0.0);
  for (std::size_t i = 1; i < p.samples.size(); ++i) {
    const auto& s = p.samples[i];
    CHECK(s.mass > p.samples[i - 1].mass);
    if (std::abs(s.log_t) > 1e-12) CHECK(s.action < p.J_w);
    if (std::isfinite(s.t) && s.t > 0) CHECK(std::log(s.t) == doctest::Approx(s.log_t));
  }
  CHECK(p.samples.back().action < -1.0);
  CHECK(p.samples.back().log_t == doctest::Approx(p.log_T));
}

TEST_CASE("plateau path survives an end point beyond double range") {
  const auto w = shoot_1d(cq, 0.1, -1);
  REQUIRE(w.decayed());
  const auto run = mountain_pass_path(cq, w);
  CHECK(run.kind == PathKind::Plateau);
  CHECK(std::isinf(run.T));
  CHECK(std::isfinite(run.log_T));
  CHECK(run.check.ok());
  CHECK(run.plateau_bound);
}

TEST_CASE("planar two-parameter family") {
  const auto& w = witness2();
  REQUIRE(w.decayed());
  const Psi2D psi(p3, w);
  CHECK(psi.value(1.0, 1.0) == doctest::Approx(w.action).epsilon(1e-4));
  CHECK(psi.mass(1.0, 1.0) == doctest::Approx(w.mass).epsilon(1e-6));
  CHECK(psi.mass(0.5, 3.0) == doctest::Approx(0.25 * 9.0 * w.mass).epsilon(1e-6));
  CHECK(std::abs(psi.d_s(1.0, 1.0)) <= 1e-4 * w.action);
  CHECK(std::abs(psi.d_theta(1.0, 1.0)) <= 1e-4 * w.action);
  CHECK(psi.distance(1.0, 1.0) <= 1e-12);
  CHECK(psi.distance(0.0, 1.0) == doctest::Approx(std::sqrt(w.mass)).epsilon(1e-6));

  const double h = 1e-5;
  for (double th : {0.5, 1.3}) {
    for (double s : {0.7, 2.0}) {
      const double fd_th = (psi.value(th + h, s) - psi.value(th - h, s)) / (2 * h);
      const double fd_s = (psi.value(th, s + h) - psi.value(th, s - h)) / (2 * h);
      CHECK(psi.d_theta(th, s) == doctest::Approx(fd_th).epsilon(1e-5));
      CHECK(psi.d_s(th, s) == doctest::Approx(fd_s).epsilon(1e-5));
    }
  }
  // Gradient term is dilation invariant in the plane.
  CHECK(psi.value(0.5, 2.0) - psi.value(0.5, 1.0) ==
        doctest::Approx(-3.0 * psi.int_G(0.5)).epsilon(1e-9));
}

TEST_CASE("planar mountain-pass path") {
  const auto& w = witness2();
  const auto run = mountain_pass_path(p3, w);
  CHECK(run.kind == PathKind::TwoParameter);
  CHECK(run.check.ok());
  CHECK(run.pattern_ok);
  REQUIRE(run.params.has_value());
  CHECK(run.params->theta1 < 1.0);
  CHECK(run.params->theta2 > 1.0);
}

TEST_CASE("path csv header and argument checks") {
  const auto& w = witness3();
  const auto d = dilation_path(cubic, w, 8, w.mass);
  const std::string file = "test_path.csv";
  write_path_csv(d.samples, file);
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,mass,action,log_t");
  CHECK_THROWS_AS(dilation_path(cubic, w, 1, w.mass), Error);
  CHECK_THROWS_AS(plateau_path_1d(cubic, w, 64, w.mass), Error);
}
