#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gsmin/error.hpp"
#include "gsmin/verification.hpp"

using namespace gsmin;

namespace {
const NonlinearityModel cubic = parse_model("single-power:p=4");
const NonlinearityModel cq = parse_model("cubic-quintic");

bool none_fail(const std::vector<TheoremVerdict>& vs) {
  for (const auto& v : vs)
    if (v.status == VerdictStatus::Fail) {
      MESSAGE(v.claim << " failed: " << v.note);
      return false;
    }
  return true;
}

const TheoremVerdict* find(const std::vector<TheoremVerdict>& vs, const std::string& claim) {
  for (const auto& v : vs)
    if (v.claim == claim) return &v;
  return nullptr;
}
}  // namespace

TEST_CASE("least action matches the soliton closed form") {
  const RadialGrid grid(1, 20.0, 4000);
  const auto out = verify_thm18(cubic, 1, 4.0, grid, SolverConfig{}, 5e-3);
  CHECK(out.first.status == VerdictStatus::Pass);
  CHECK(out.second.status == VerdictStatus::Pass);
  // mass 4 soliton has mu = 1, E = -2/3, A = 4/3.
  CHECK(*out.first.value("A") == doctest::Approx(4.0 / 3.0).epsilon(1e-3));
  CHECK(*out.first.value("E") == doctest::Approx(-2.0 / 3.0).epsilon(1e-3));
  CHECK(*out.first.value("mu") == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(*out.second.value("witness_mass") == doctest::Approx(4.0).epsilon(1e-3));
  CHECK_FALSE(out.first.value("no-such-measurement").has_value());
}

TEST_CASE("identities hold for a shot soliton and fail for a perturbed one") {
  auto w = shoot_1d(cubic, 1.0, 1);
  CHECK(verify_identities(w, "x", 1e-3).status == VerdictStatus::Pass);
  w.residuals.nehari_residual += 1.0;
  CHECK(verify_identities(w, "x", 1e-3).status == VerdictStatus::Fail);
}

TEST_CASE("line classification claims") {
  const auto v = verify_lemma31(cubic, {1.0}, VerifyTolerances{});
  CHECK_FALSE(v.empty());
  CHECK(none_fail(v));
  // Above 3/16 the cubic-quintic has no zero of G_mu.
  const auto q = verify_lemma31(cq, {0.1, 0.2}, VerifyTolerances{});
  CHECK(none_fail(q));
}

TEST_CASE("rearrangement claims on random profiles") {
  const auto v = verify_lemma32(RadialGrid(3, 10.0, 400), 12, 7, VerifyTolerances{});
  REQUIRE(v.size() == 3);
  CHECK(none_fail(v));
  CHECK(*find(v, "LEM32-mass")->value("max_relative_mass_change") <= 1e-10);
}

TEST_CASE("mountain-pass claims in three dimensions") {
  const auto v = verify_lemma41(cubic, 3, 1.0, PathOptions{});
  CHECK(none_fail(v));
  REQUIRE(find(v, "LEM41-i") != nullptr);
  CHECK(find(v, "LEM41-i")->status == VerdictStatus::Pass);
}

TEST_CASE("baseline store records then compares") {
  const std::string file = "test_baselines.json";
  std::remove(file.c_str());
  {
    BaselineStore s(file);
    CHECK(s.check("a|b|value", 2.0, 1e-6, "inst").status == VerdictStatus::Pass);
    s.save();
  }
  BaselineStore s(file);
  const auto same = s.check("a|b|value", 2.0 * (1 + 1e-8), 1e-6, "inst");
  CHECK(same.status == VerdictStatus::Pass);
  CHECK(same.claim == "REG-value");
  CHECK(s.check("a|b|value", 2.1, 1e-6, "inst").status == VerdictStatus::Fail);
}

TEST_CASE("suite on the line soliton") {
  SuiteConfig cfg(cubic, 1, RadialGrid(1, 20.0, 4000));
  cfg.m = 4.0;
  cfg.rearrange_profiles = 10;
  const auto rep = run_suite(cfg);
  CHECK_FALSE(rep.any_fail());
  CHECK(rep.count(VerdictStatus::Pass) > 10);
  for (std::size_t i = 1; i < rep.verdicts.size(); ++i)
    CHECK(rep.verdicts[i - 1].claim <= rep.verdicts[i].claim);

  const std::string file = "test_verdicts.csv";
  write_verdicts_csv(rep.verdicts, file);
  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "claim,instance,status,tolerance,measured,note");
  std::ostringstream table;
  write_verdicts_table(rep.verdicts, table);
  CHECK(table.str().find("pass") != std::string::npos);
}

TEST_CASE("suite rejects an unknown suite name") {
  SuiteConfig cfg(cubic, 1, RadialGrid(1, 20.0, 400));
  cfg.suite = "bogus";
  CHECK_THROWS_AS(run_suite(cfg), Error);
  CHECK(std::string(to_string(VerdictStatus::NotApplicable)) == "not-applicable");
}
