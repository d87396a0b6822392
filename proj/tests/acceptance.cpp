// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsmin/critical_mass.hpp"
#include "gsmin/error.hpp"
#include "gsmin/minimizer.hpp"
#include "gsmin/mp_path.hpp"
#include "gsmin/radial.hpp"
#include "gsmin/shooting.hpp"
#include "gsmin/verification.hpp"

using namespace gsmin;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const NonlinearityModel& cubic() {
  static const NonlinearityModel m = parse_model("single-power:p=4");
  return m;
}
const NonlinearityModel& cq() {
  static const NonlinearityModel m = parse_model("cubic-quintic");
  return m;
}

double rel_pohozaev(const ActionReport& r) { return std::abs(r.pohozaev_relative()); }
double rel_nehari(const ActionReport& r) { return std::abs(r.nehari_relative()); }

void soliton_ground_state(Outcome& o) {
  const auto t0 = Clock::now();
  const auto r = minimize(cubic(), 1, 4.0, RadialGrid(1, 20.0, 4000), SolverConfig{});
  const double dt = seconds_since(t0);
  o.detail << "E=" << r.E << " mu=" << r.mu << " time=" << dt << "s";
  o.require(r.converged, "converged");
  o.require(std::abs(r.E + 2.0 / 3.0) <= 1e-3, "|E + 2/3| <= 1e-3");
  o.require(std::abs(r.mu - 1.0) <= 1e-3, "|mu - 1| <= 1e-3");
  o.require(dt < 5.0, "runtime < 5 s");
}

void energy_curve_law(Outcome& o) {
  const std::vector<double> ms{1, 2, 3, 4};
  const auto rows = energy_curve(cubic(), 1, ms, RadialGrid(1, 20.0, 4000), SolverConfig{});
  double worst = 0.0;
  for (const auto& row : rows) {
    o.require(row.converged(), "converged at m=" + std::to_string(row.m));
    if (!row.ok()) continue;
    const double exact = -row.m * row.m * row.m / 96.0;
    worst = std::max(worst, std::abs(row.result->E - exact) / std::abs(exact));
  }
  const auto shape = curve_properties(rows, 1);
  o.detail << "max relative error=" << worst << " nonincreasing=" << shape.nonincreasing
           << " subhomogeneous=" << shape.subhomogeneous;
  o.require(worst <= 5e-3, "relative error <= 0.5%");
  o.require(shape.nonincreasing, "nonincreasing");
  o.require(shape.subhomogeneous, "subhomogeneous");
}

void least_action_identity(Outcome& o) {
  const auto la = least_action(cubic(), 1, 1.0);
  const auto r = minimize(cubic(), 1, 4.0, RadialGrid(1, 20.0, 4000), SolverConfig{});
  const double diff = std::abs(la.A - (r.E + 2.0));
  o.detail << "A=" << la.A << " E4=" << r.E << " |A-(E4+2)|=" << diff;
  o.require(std::abs(la.A - 4.0 / 3.0) <= 1e-4, "|A - 4/3| <= 1e-4");
  o.require(diff <= 2e-3, "|A - (E4 + 2)| <= 2e-3");
  const auto v = verify_thm18(cubic(), r, 2e-3, 1e-8);
  o.require(v.first.status == VerdictStatus::Pass, "least-action verdict");
}

void identity_residuals(Outcome& o) {
  double worst = 0.0;
  int minimizers = 0, witnesses = 0;
  auto take_min = [&](const MinimizeResult& r) {
    if (!r.converged) return;
    ++minimizers;
    worst = std::max({worst, rel_pohozaev(r.residuals), rel_nehari(r.residuals)});
  };
  auto take_shot = [&](const ShootResult& w) {
    if (!w.decayed()) return;
    ++witnesses;
    worst = std::max({worst, rel_pohozaev(w.residuals), rel_nehari(w.residuals)});
  };
  const RadialGrid g1(1, 20.0, 4000);
  for (double m : {1.0, 2.0, 3.0, 4.0}) take_min(minimize(cubic(), 1, m, g1, SolverConfig{}));
  for (double m : {2.0, 4.0}) take_min(minimize(cq(), 1, m, g1, SolverConfig{}));
  take_min(minimize(cq(), 3, 300.0, RadialGrid(3, 40.0, 2000), SolverConfig{}));
  for (double mu : {0.25, 1.0, 4.0}) {
    for (const auto& w : least_action(cubic(), 1, mu).candidates) take_shot(w);
    take_shot(ground_state_radial(cubic(), 3, mu, 1));
  }
  for (double mu : {0.05, 0.1, 0.15}) take_shot(shoot_1d(cq(), mu, 1));
  take_shot(ground_state_radial(parse_model("single-power:p=3"), 2, 1.0, 1));
  o.detail << minimizers << " minimizers, " << witnesses << " witnesses, max residual=" << worst;
  o.require(minimizers >= 7 && witnesses >= 10, "all runs converged or decayed");
  o.require(worst <= 1e-3, "residuals <= 1e-3");
}

void phase_plane(Outcome& o) {
  ShootOptions opts;
  opts.step = 1e-3;
  const auto w = shoot_1d(cubic(), 1.0, 1, opts);
  o.detail << "max |u'^2/2 + G(u)|=" << w.phase_energy_max_dev;
  o.require(w.decayed(), "decayed");
  o.require(w.phase_energy_max_dev <= 1e-6, "drift <= 1e-6");
}

void critical_mass(Outcome& o) {
  const auto t0 = Clock::now();
  const auto one = estimate_mstar(cq(), 1, RadialGrid(1, 20.0, 4000), SolverConfig{});
  bool all_certified = one.spot_checks.size() == 3;
  for (const auto& s : one.spot_checks) all_certified = all_certified && s.certified;
  o.require(one.classification == MStarClass::Zero, "N=1 zero class");
  o.require(all_certified, "N=1 E < 0 certified at 0.01, 0.1, 1");

  const RadialGrid g3(3, 40.0, 2000);
  MStarOptions mo;
  mo.verify_restarts = 4;
  const auto three = estimate_mstar(cq(), 3, g3, SolverConfig{}, mo);
  o.require(three.classification != MStarClass::Zero && three.lower > 0.0, "N=3 positive bracket");
  o.require(three.width <= 1e-2, "width <= 1e-2");
  o.require(three.E_upper < -three.margin, "E(upper) certified negative");
  o.require(three.endpoints_verified, "lower never certified across 4 restarts");

  const auto rows = energy_curve(cq(), 3, {100.0, 200.0, 300.0, 400.0}, g3, SolverConfig{});
  const auto shape = curve_properties(rows, 3);
  o.require(shape.concave_applicable && shape.concave, "N=3 concavity");
  const double dt = seconds_since(t0);
  o.require(dt < 120.0, "runtime < 2 min");
  o.detail << "N=1 " << to_string(one.classification) << "; N=3 m* in [" << three.lower << ", " << three.upper << "] E(upper)=" << three.E_upper
           << " concave=" << shape.concave << " time=" << dt << "s";
}

void mountain_pass(Outcome& o) {
  const auto w3 = ground_state_radial(cubic(), 3, 1.0, 1);
  const auto d = mountain_pass_path(cubic(), w3);
  double t_max = 0.0, best = -1e300;
  for (const auto& s : d.samples)
    if (s.action > best) best = s.action, t_max = s.t;
  o.require(d.kind == PathKind::Dilation, "N=3 dilation");
  o.require(d.formula_mismatch <= 1e-6, "formula vs quadrature <= 1e-6");
  o.require(std::abs(t_max - 1.0) < 1e-12, "max at t=1");
  o.require(d.check.J_T < -1.0, "J(T) < -1");
  o.require(d.check.mass_increasing, "mass increasing");

  const auto w1 = shoot_1d(cubic(), 1.0, 1);
  const auto p = mountain_pass_path(cubic(), w1);
  bool below = true;
  for (const auto& s : p.samples)
    if (s.log_t != 0.0 && !(s.action < p.J_w)) below = false;
  o.require(p.kind == PathKind::Plateau && below, "N=1 plateau J < J(w) for t != 1");
  o.require(p.check.ok(), "N=1 path checks");

  const auto w2 = ground_state_radial(parse_model("single-power:p=3"), 2, 1.0, 1);
  const auto q = mountain_pass_path(parse_model("single-power:p=3"), w2);
  o.require(q.kind == PathKind::TwoParameter && q.pattern_ok, "N=2 segment pattern");
  o.require(q.check.ok(), "N=2 path checks");
  o.detail << "mismatch=" << d.formula_mismatch << " J(T)=" << d.check.J_T << "; plateau max="
           << p.check.max_J << " J(w)=" << p.J_w << "; planar pattern_ok=" << q.pattern_ok << q.pattern_detail;
}

void rearrangement(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_mass = 0.0, worst_grad = 0.0;
  bool idempotent = true;
  for (int k = 0; k < 100; ++k) {
    const int N = 1 + k % 3;
    const RadialGrid g(N, 10.0, 500);
    const int bumps = 1 + static_cast<int>(U(rng) * 4);
    std::vector<double> c(bumps), a(bumps), s(bumps);
    for (int b = 0; b < bumps; ++b) c[b] = 9.0 * U(rng), a[b] = 0.1 + 2.0 * U(rng), s[b] = 0.2 + U(rng);
    const auto u = RadialProfile::sample(g, [&](double r) {
      double v = 0.0;
      for (int b = 0; b < bumps; ++b) v += a[b] * std::exp(-std::pow((r - c[b]) / s[b], 2));
      return r >= 10.0 ? 0.0 : v;
    });
    const auto star = schwarz_rearrange(u);
    worst_mass = std::max(worst_mass, std::abs(mass(star) - mass(u)) / mass(u));
    worst_grad = std::max(worst_grad, (grad_norm_sq(star) - grad_norm_sq(u)) / grad_norm_sq(u));
    const auto twice = schwarz_rearrange(star);
    idempotent = idempotent && std::equal(twice.values().begin(), twice.values().end(),
                                          star.values().begin());
  }
  o.detail << "max mass change=" << worst_mass << " max gradient increase=" << worst_grad
           << " idempotent=" << idempotent;
  o.require(worst_mass <= 1e-10, "mass preserved to 1e-10");
  o.require(worst_grad <= 0.0, "gradient never increases");
  o.require(idempotent, "idempotent");
}

void sign_diagnostics(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int passed = 0;
  for (int k = 0; k < 10; ++k) {
    std::ostringstream desc;
    int N = 1;
    if (k % 5 == 4) {
      desc << "cubic-quintic";
    } else {
      N = 1 + k % 2;
      const double crit = 2.0 + 4.0 / N;
      const double p = 2.6 + (crit - 0.3 - 2.6) * U(rng);
      desc << "single-power:p=" << p;
    }
    const double m = 2.0 + 4.0 * U(rng);
    const auto model = parse_model(desc.str());
    const auto r = minimize(model, N, m, RadialGrid(N, 30.0, 3000), SolverConfig{});
    const auto s = sign_monotonicity_check(r);
    const bool ok = r.converged && s.constant_sign && s.nonincreasing_modulus;
    passed += ok;
    if (!ok) o.detail << "[" << desc.str() << " N=" << N << " m=" << m << "] ";
  }
  o.detail << passed << "/10 instances pass";
  o.require(passed == 10, "all 10 instances");
}

void cross_solver(Outcome& o) {
  const double m = 4.0;
  const RadialGrid g(1, 20.0, 4000);
  const auto r = minimize(cq(), 1, m, g, SolverConfig{});
  const auto la = least_action(cq(), 1, r.mu);
  const auto& w = la.witness;
  const double align = (r.profile[0] < 0) == (w.zeta < 0) ? 1.0 : -1.0;
  double sup = 0.0;
  for (int i = 0; i < g.nodes(); ++i)
    sup = std::max(sup, std::abs(align * r.profile[i] - w.at(g.r(i))));
  o.detail << "m=" << m << " mu=" << r.mu << " sup distance=" << sup;
  o.require(r.converged && w.decayed(), "both solvers succeed");
  o.require(sup <= 1e-3, "sup distance <= 1e-3");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"cubic soliton ground state", soliton_ground_state},
      {"energy curve law", energy_curve_law},
      {"least action identity", least_action_identity},
      {"identity residuals", identity_residuals},
      {"phase-plane conservation", phase_plane},
      {"critical-mass dichotomy", critical_mass},
      {"mountain-pass paths", mountain_pass},
      {"rearrangement properties", rearrangement},
      {"sign and monotonicity diagnostics", sign_diagnostics},
      {"cross-solver agreement", cross_solver},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::printf("%s criterion %zu (%s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
