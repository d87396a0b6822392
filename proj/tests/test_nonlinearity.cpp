#include <cmath>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/nonlinearity.hpp"

using namespace gsmin;

TEST_CASE("cubic-quintic f and F by direct arithmetic") {
  const auto cq = parse_model("cubic-quintic");
  CHECK(cq.f(0.0) == 0.0);
  CHECK(cq.f(0.5) == doctest::Approx(0.5 * 0.5 * 0.5 - std::pow(0.5, 5)).epsilon(1e-15));
  CHECK(cq.f(0.5) == doctest::Approx(0.09375));
  CHECK(cq.f(-0.5) == doctest::Approx(-0.09375));
  CHECK(cq.F(0.0) == 0.0);
  CHECK(cq.F(1.0) == doctest::Approx(1.0 / 4 - 1.0 / 6).epsilon(1e-15));
}

TEST_CASE("single-power primitive") {
  const auto sp = parse_model("single-power:p=4");
  CHECK(sp.F(2.0) == doctest::Approx(4.0));
  CHECK(sp.f(2.0) == doctest::Approx(8.0));
  const auto neg = parse_model("single-power:p=4,sign=-1");
  CHECK(neg.F(2.0) == doctest::Approx(-4.0));
}

TEST_CASE("F is the primitive of f for every family") {
  for (const char* d : {"single-power:p=3.5", "power-sum:p=3,q=2.5,A=1", "power-difference:p=4,q=6",
                        "cubic-quintic"}) {
    const auto m = parse_model(d);
    // Composite Simpson on [0, t] as an independent primitive.
    for (double t : {-1.3, 0.7, 2.0}) {
      const int n = 2000;
      const double h = t / n;
      double s = m.f(0.0) + m.f(t);
      for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * m.f(i * h);
      CHECK(m.F(t) == doctest::Approx(s * h / 3.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("custom model primitive by quadrature") {
  const auto cu = NonlinearityModel::custom([](double t) { return t * t * t; }, 4.0, 4.0);
  CHECK(cu.F(2.0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(cu.F(-1.5) == doctest::Approx(std::pow(1.5, 4) / 4).epsilon(1e-10));
  CHECK_FALSE(cu.is_odd());
}

TEST_CASE("descriptor parsing") {
  CHECK(parse_model("single-power:p=4").describe() == "single-power:p=4");
  CHECK(parse_model("cubic-quintic").family() == Family::CubicQuintic);
  CHECK_THROWS_AS(parse_model("foo"), Error);
  CHECK_THROWS_AS(parse_model("single-power"), Error);
  CHECK_THROWS_AS(parse_model("single-power:p=1"), Error);
  try {
    parse_model("bogus:p=2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("hypotheses from exponents") {
  CHECK(check_hypotheses(parse_model("cubic-quintic"), 3).all_pass());
  CHECK(check_hypotheses(parse_model("single-power:p=4"), 1).all_pass());
  const auto r = check_hypotheses(parse_model("single-power:p=4"), 3);
  CHECK(r.f1.ok());
  CHECK_FALSE(r.f2.ok());
  const auto cu = NonlinearityModel::custom([](double t) { return t * t * t; }, 4.0, 4.0);
  CHECK(check_hypotheses(cu, 1).f1.verdict == Verdict3::Sampled);
}

TEST_CASE("small-mass classification") {
  const auto cq = parse_model("cubic-quintic");
  CHECK(classify_small_mass(cq, 1) == SmallMassClass::A1);
  CHECK(classify_small_mass(cq, 3) == SmallMassClass::A2);
  CHECK(classify_small_mass(parse_model("power-sum:p=3,q=2.5,A=1"), 1) == SmallMassClass::A1);
}

TEST_CASE("zeta closed form for the single power") {
  const auto sp = parse_model("single-power:p=4");
  // zeta_+ = (p mu / 2)^(1/(p-2)).
  auto z = find_zeta(ShiftedNonlinearity(sp, 2.0), 1);
  REQUIRE(z);
  CHECK(z->zeta == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(z->g_at_zeta == doctest::Approx(4.0).epsilon(1e-9));
  z = find_zeta(ShiftedNonlinearity(sp, 0.5), 1);
  REQUIRE(z);
  CHECK(z->zeta == doctest::Approx(1.0).epsilon(1e-10));
  z = find_zeta(ShiftedNonlinearity(sp, 0.5), -1);
  REQUIRE(z);
  CHECK(z->zeta == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("cubic-quintic zeta exists exactly below mu = 3/16") {
  // G = t^2 (-mu/2 + t^2/4 - t^4/6): the quadratic in t^2 has a real root iff mu <= 3/16.
  const auto cq = parse_model("cubic-quintic");
  CHECK(find_zeta(ShiftedNonlinearity(cq, 0.1), 1).has_value());
  CHECK(find_zeta(ShiftedNonlinearity(cq, 0.18), 1).has_value());
  CHECK_FALSE(find_zeta(ShiftedNonlinearity(cq, 0.19), 1).has_value());
  CHECK_FALSE(find_zeta(ShiftedNonlinearity(cq, 0.5), -1).has_value());
  const double mu = 0.1;
  const double s2 = (0.25 - std::sqrt(0.0625 - 4.0 / 6.0 * mu / 2.0)) / (2.0 / 6.0);
  CHECK(find_zeta(ShiftedNonlinearity(cq, mu), 1)->zeta == doctest::Approx(std::sqrt(s2)).epsilon(1e-9));
}
