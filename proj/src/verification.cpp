#include "gsmin/verification.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "json.hpp"
#include "parallel.hpp"

namespace gsmin {

const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

std::optional<double> TheoremVerdict::value(const std::string& name) const {
  for (const auto& m : measured)
    if (m.name == name) return m.value;
  return std::nullopt;
}

std::string describe_instance(const NonlinearityModel& model, int N, const char* key,
                              double value) {
  std::ostringstream os;
  os << model.describe() << " N=" << N << ' ' << key << '=' << std::setprecision(12) << value;
  return os.str();
}

namespace {

TheoremVerdict verdict(std::string claim, std::string instance, double tol) {
  TheoremVerdict v;
  v.claim = std::move(claim);
  v.instance = std::move(instance);
  v.tolerance = tol;
  return v;
}

VerdictStatus pass_if(bool ok) { return ok ? VerdictStatus::Pass : VerdictStatus::Fail; }

void not_applicable(TheoremVerdict& v, std::string note) {
  v.status = VerdictStatus::NotApplicable;
  v.note = std::move(note);
}

}  // namespace

Thm18Outcome verify_thm18(const NonlinearityModel& model, const MinimizeResult& minimizer,
                          double tol, double margin, std::optional<double> mstar_upper,
                          const ShootOptions& shoot) {
  const int N = minimizer.profile.grid().dim();
  const double m = minimizer.mass;
  const std::string inst = describe_instance(model, N, "m", m);
  Thm18Outcome out;
  out.minimizer = minimizer;
  out.first = verdict("THM18-i", inst, tol);
  out.second = verdict("THM18-ii", inst, tol);
  auto both_na = [&](const std::string& why) {
    not_applicable(out.first, why);
    not_applicable(out.second, why);
  };
  if (mstar_upper && !(m > *mstar_upper)) {
    both_na("m is not above the critical-mass bracket");
    return out;
  }
  if (!minimizer.converged) {
    both_na("minimizer did not converge");
    return out;
  }
  const double E = minimizer.E, mu = minimizer.mu;
  out.first.measured = {{"E", E}, {"mu", mu}, {"m", m}};
  if (!(E < -margin)) {
    both_na("E is not certified negative, so m is not above m*");
    return out;
  }
  if (!(mu > 0.0)) {
    out.first.status = VerdictStatus::Fail;
    out.first.note = "multiplier is not positive";
    not_applicable(out.second, "no positive multiplier");
    return out;
  }
  try {
    out.least = least_action(model, N, mu, shoot);
  } catch (const Error& e) {
    out.first.status = VerdictStatus::Fail;
    out.first.note = std::string("least action search failed: ") + e.what();
    not_applicable(out.second, "no least action witness");
    return out;
  }
  const double A = out.least->A;
  const double rhs = E + 0.5 * mu * m;
  const double diff = A - rhs;
  out.first.measured.push_back({"A", A});
  out.first.measured.push_back({"E_plus_half_mu_m", rhs});
  out.first.measured.push_back({"difference", diff});
  if (N == 1) {
    out.first.status = pass_if(std::abs(diff) <= tol);
  } else if (diff < -tol) {
    out.first.status = VerdictStatus::Fail;
    out.first.note = "one-sided: shooting action lies below E + mu m / 2";
  } else if (diff <= tol) {
    out.first.status = VerdictStatus::Pass;
    out.first.note = "one-sided (radial shooting gives an upper bound); equality within tolerance";
  } else {
    out.first.status = VerdictStatus::NotApplicable;
    out.first.note = "one-sided: A >= E + mu m / 2 holds but equality is not confirmed";
  }

  const ShootResult& w = out.least->witness;
  const double I_w = A - 0.5 * mu * w.mass;
  const double dm = w.mass - m;
  const double dI = I_w - E;
  out.second.measured = {{"witness_mass", w.mass}, {"m", m}, {"witness_I", I_w}, {"E", E},
                         {"mass_difference", dm}, {"energy_difference", dI}};
  out.second.status = pass_if(std::abs(dm) <= tol * std::max(1.0, m) && std::abs(dI) <= tol);
  if (N >= 2) out.second.note = "witness is the radial solution found by shooting";
  return out;
}

Thm18Outcome verify_thm18(const NonlinearityModel& model, int N, double m, const RadialGrid& grid,
                          const SolverConfig& config, double tol,
                          std::optional<double> mstar_upper, const ShootOptions& shoot) {
  const MinimizeResult r = minimize(model, N, m, grid, config);
  return verify_thm18(model, r, tol, 10.0 * config.tol, mstar_upper, shoot);
}

TheoremVerdict verify_thm14(const MinimizeResult& result, const std::string& instance) {
  TheoremVerdict v = verdict("THM14", instance, 0.0);
  if (!result.converged) {
    not_applicable(v, "minimizer did not converge");
    return v;
  }
  const SignReport s = sign_monotonicity_check(result);
  v.tolerance = s.noise_floor;
  v.measured = {{"constant_sign", s.constant_sign ? 1.0 : 0.0},
                {"nonincreasing_modulus", s.nonincreasing_modulus ? 1.0 : 0.0},
                {"noise_floor", s.noise_floor}};
  v.status = pass_if(s.constant_sign && s.nonincreasing_modulus);
  v.note = "radial symmetry holds by construction";
  return v;
}

TheoremVerdict verify_identities(const MinimizeResult& result, const std::string& instance,
                                 double tol) {
  TheoremVerdict v = verdict("IDENT-minimizer", instance, tol);
  if (!result.converged) {
    not_applicable(v, "minimizer did not converge");
    return v;
  }
  const double p = result.residuals.pohozaev_relative();
  const double n = result.residuals.nehari_relative();
  v.measured = {{"pohozaev_relative", p}, {"nehari_relative", n}, {"mu", result.mu}};
  v.status = pass_if(p <= tol && n <= tol);
  return v;
}

TheoremVerdict verify_identities(const ShootResult& witness, const std::string& instance,
                                 double tol) {
  TheoremVerdict v = verdict("IDENT-witness", instance, tol);
  if (!witness.decayed()) {
    not_applicable(v, "witness did not decay");
    return v;
  }
  const double p = witness.residuals.pohozaev_relative();
  const double n = witness.residuals.nehari_relative();
  v.measured = {{"pohozaev_relative", p}, {"nehari_relative", n}, {"mu", witness.mu}};
  v.status = pass_if(p <= tol && n <= tol);
  return v;
}

namespace {

// Mass fraction in the outer half of the box; a state spread over the box keeps a
// fixed share there (about 0.18 for the 1D Dirichlet mode, more for N > 1).
double outer_mass_fraction(const RadialProfile& u) {
  const auto w = u.grid().weights();
  const double cut = 0.5 * u.grid().radius();
  double outer = 0.0, total = 0.0;
  for (int i = 0; i < u.size(); ++i) {
    const double c = w[i] * u[i] * u[i];
    total += c;
    if (u.grid().r(i) >= cut) outer += c;
  }
  return total > 0.0 ? outer / total : 0.0;
}

}  // namespace

CurveVerification verify_curve(const NonlinearityModel& model, int N,
                               const std::vector<double>& masses, const RadialGrid& grid,
                               const SolverConfig& config, const MStarOptions& mstar_opts,
                               const VerifyTolerances& tol, int workers) {
  require(!masses.empty(), "curve verification needs at least one mass");
  CurveVerification out;
  const std::string inst = model.describe() + " N=" + std::to_string(N) + " masses=" +
                           std::to_string(masses.size());
  CurveOptions copts;
  copts.workers = workers;
  out.rows = energy_curve(model, N, masses, grid, config, copts);
  const double margin = mstar_opts.margin > 0.0 ? mstar_opts.margin : 10.0 * config.tol;

  std::string mstar_error;
  try {
    out.mstar = estimate_mstar(model, N, grid, config, mstar_opts);
  } catch (const Error& e) {
    mstar_error = e.what();
  }

  std::optional<CurveReport> rep;
  std::string curve_error;
  try {
    rep = curve_properties(out.rows, N, tol.curve);
  } catch (const Error& e) {
    curve_error = e.what();
  }

  auto curve_verdict = [&](const char* claim, auto pick) {
    TheoremVerdict v = verdict(claim, inst, 2.0 * tol.curve);
    if (!rep) {
      not_applicable(v, curve_error);
    } else {
      v.status = pass_if(pick(*rep));
      v.measured.push_back({"rows", static_cast<double>(rep->masses.size())});
      for (const auto& s : rep->violations) v.note += (v.note.empty() ? "" : "; ") + s;
    }
    return v;
  };
  {
    TheoremVerdict v = curve_verdict("THM11-mono", [](const CurveReport& r) { return r.nonincreasing; });
    if (rep) v.note.clear();
    out.verdicts.push_back(v);
  }
  {
    TheoremVerdict v = curve_verdict("THM11-cont", [](const CurveReport& r) { return r.continuous; });
    if (rep) {
      v.measured.push_back({"continuity_constant", rep->continuity_constant});
      v.note.clear();
    }
    out.verdicts.push_back(v);
  }
  {
    TheoremVerdict v =
        curve_verdict("LEM22-iv", [](const CurveReport& r) { return r.subhomogeneous; });
    out.verdicts.push_back(v);
  }
  {
    TheoremVerdict v = curve_verdict("REM23", [](const CurveReport& r) { return r.concave; });
    if (N < 2) not_applicable(v, "concavity is only claimed for N >= 2");
    out.verdicts.push_back(v);
  }

  TheoremVerdict vi = verdict("THM11-i", inst, margin);
  TheoremVerdict vii = verdict("THM11-ii", inst, 0.05);
  TheoremVerdict viii = verdict("THM11-iii", inst, margin);
  TheoremVerdict viv = verdict("THM11-iv", inst, mstar_opts.tol_mass);
  TheoremVerdict l22ii = verdict("LEM22-ii", inst, margin);
  TheoremVerdict l22iii = verdict("LEM22-iii", inst, margin);
  if (!out.mstar) {
    for (TheoremVerdict* v : {&vi, &vii, &viii, &viv, &l22ii, &l22iii}) {
      v->status = VerdictStatus::Fail;
      v->note = "critical mass estimate failed: " + mstar_error;
    }
  } else {
    const MStarEstimate& ms = *out.mstar;
    const bool zero = ms.classification == MStarClass::Zero;
    for (TheoremVerdict* v : {&vi, &viv}) {
      v->measured = {{"lower", ms.lower}, {"upper", ms.upper}, {"width", ms.width}};
    }
    int above = 0, above_ok = 0, below = 0, below_ok = 0, achieved = 0;
    double worst_outer = 0.0;
    for (const auto& row : out.rows) {
      const bool neg = row.certified_negative(margin);
      if (row.m > ms.upper) {
        ++above;
        if (neg) {
          ++above_ok;
          const double f = outer_mass_fraction(row.result->profile);
          worst_outer = std::max(worst_outer, f);
          if (f <= vii.tolerance) ++achieved;
        }
      } else if (row.m <= ms.lower) {
        ++below;
        if (!neg) ++below_ok;
      }
    }
    vi.measured.push_back({"rows_above", static_cast<double>(above)});
    vi.measured.push_back({"rows_above_negative", static_cast<double>(above_ok)});
    vi.measured.push_back({"rows_below", static_cast<double>(below)});
    vi.measured.push_back({"rows_below_zero", static_cast<double>(below_ok)});
    vi.status = pass_if(above_ok == above && below_ok == below &&
                        (zero ? ms.spot_checks_pass : ms.endpoints_verified));
    vi.note = "E_m = 0 is read as: no restart certifies E < -margin";

    vii.measured = {{"rows_above", static_cast<double>(above)},
                    {"localized", static_cast<double>(achieved)},
                    {"max_outer_mass_fraction", worst_outer}};
    if (above == 0) not_applicable(vii, "no curve mass above the bracket");
    else vii.status = pass_if(achieved == above);

    if (zero) {
      not_applicable(viii, "m* = 0, no mass below it");
    } else {
      viii.measured = {{"rows_below", static_cast<double>(below)},
                       {"rows_below_zero", static_cast<double>(below_ok)},
                       {"E_lower", ms.E_lower}};
      viii.status = pass_if(below_ok == below && ms.endpoints_verified);
      viii.note = "one-sided: nonexistence is read as no certified negative energy";
    }

    const SmallMassClass cls = classify_small_mass(model, N);
    viv.measured.push_back({"class_A1", cls == SmallMassClass::A1 ? 1.0 : 0.0});
    if (cls == SmallMassClass::A1) {
      viv.status = pass_if(zero && ms.spot_checks_pass);
      viv.note = "m* = 0 expected";
    } else if (cls == SmallMassClass::A2) {
      viv.status = pass_if(ms.classification == MStarClass::Positive && ms.lower > 0.0 &&
                           ms.endpoints_verified && ms.width <= mstar_opts.tol_mass);
      viv.note = "m* > 0 expected";
    } else {
      not_applicable(viv, "small-mass class undetermined");
    }

    l22ii.measured = {{"upper", ms.upper}, {"E_upper", ms.E_upper}};
    if (zero) {
      bool any = false;
      for (const auto& s : ms.spot_checks) any = any || s.certified;
      l22ii.status = pass_if(any);
    } else {
      l22ii.status = pass_if(ms.E_upper < -margin);
    }

    if (zero) {
      l22iii.measured.push_back({"spot_checks", static_cast<double>(ms.spot_checks.size())});
      l22iii.status = pass_if(ms.spot_checks_pass);
      l22iii.note = "E < 0 at every spot mass";
    } else if (cls == SmallMassClass::A2) {
      l22iii.measured = {{"lower", ms.lower}, {"E_lower", ms.E_lower}};
      l22iii.status = pass_if(ms.endpoints_verified && ms.lower > 0.0);
      l22iii.note = "E = 0 below the bracket";
    } else {
      not_applicable(l22iii, "small-mass class undetermined");
    }
  }
  for (auto* v : {&vi, &vii, &viii, &viv, &l22ii, &l22iii}) out.verdicts.push_back(*v);
  return out;
}

std::vector<TheoremVerdict> verify_lemma31(const NonlinearityModel& model,
                                           const std::vector<double>& mus,
                                           const VerifyTolerances& tol,
                                           const ShootOptions& shoot) {
  std::vector<TheoremVerdict> out;
  for (double mu : mus) {
    require(mu > 0.0, "mu must be positive");
    const ShiftedNonlinearity g(model, mu);
    for (int sign : {-1, 1}) {
      const std::string x = sign < 0 ? "a" : "b";
      const std::string inst =
          describe_instance(model, 1, "mu", mu) + (sign < 0 ? " sign=-" : " sign=+");
      auto v = [&](const std::string& sub, double t) {
        return verdict("LEM31-" + x + sub, inst, t);
      };
      TheoremVerdict v0 = v("0", 0.0), v1 = v("1", 0.0), v2 = v("2", 0.0), v3 = v("3", 1e-12),
                     v4 = v("4", 0.0), vp = v("-phase", tol.phase), vb = v("-barrier", 0.0);
      std::vector<TheoremVerdict*> subs{&v1, &v2, &v3, &v4, &vp, &vb};
      const auto z = find_zeta(g, sign);
      if (!z) {
        not_applicable(v0, "G_mu has no zero of this sign, so no solution of this sign");
        for (auto* s : subs) not_applicable(*s, "no zeta");
      } else {
        v0.measured = {{"zeta", z->zeta}, {"g_at_zeta", z->g_at_zeta}};
        if (!(sign * z->g_at_zeta > 0.0)) {
          // No decaying solution of this sign is expected; scan nearby heights.
          int decayed = 0;
          for (int k = -10; k <= 10; ++k) {
            const double b = z->zeta * (1.0 + 1e-3 * k);
            if (shoot_radial(model, 1, mu, b, shoot).decayed()) ++decayed;
          }
          v0.measured.push_back({"decayed_nearby", static_cast<double>(decayed)});
          v0.status = pass_if(decayed == 0);
          v0.note = "sign condition fails and no nearby height decays";
          for (auto* s : subs) not_applicable(*s, "sign condition fails");
        } else {
          const ShootResult w = shoot_1d(model, mu, sign, shoot);
          v0.status = VerdictStatus::Pass;
          if (!w.decayed()) {
            for (auto* s : subs) {
              s->status = VerdictStatus::Fail;
              s->note = std::string("shot from zeta did not decay: ") + w.note;
            }
          } else {
            v1.status = VerdictStatus::Pass;
            v1.note = "even reflection by construction";
            bool sign_ok = true;
            for (double u : w.trajectory.u) sign_ok = sign_ok && sign * u > 0.0;
            v2.status = pass_if(sign_ok);
            v3.measured = {{"w0", w.trajectory.u.front()}, {"G_at_w0", g.G(w.trajectory.u.front())}};
            v3.status = pass_if(std::abs(g.G(w.trajectory.u.front())) <=
                                v3.tolerance * (1.0 + std::abs(z->zeta)));
            v4.status = pass_if(w.monotone);
            vp.measured = {{"max_deviation", w.phase_energy_max_dev}};
            vp.status = pass_if(w.phase_energy_max_dev <= tol.phase);
            vb.status = pass_if(w.zeta_barrier);
          }
        }
      }
      out.push_back(v0);
      for (auto* s : subs) out.push_back(*s);
    }
  }
  return out;
}

std::vector<TheoremVerdict> verify_lemma32(const RadialGrid& grid, int count, std::uint64_t seed,
                                           const VerifyTolerances& tol) {
  require(count >= 1, "need at least one profile");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double R = grid.radius();
  double worst_mass = 0.0, worst_grad = -1.0;
  int idem = 0;
  for (int k = 0; k < count; ++k) {
    const int bumps = 1 + static_cast<int>(unit(rng) * 4.0);
    std::vector<double> c(bumps), s(bumps), a(bumps);
    for (int b = 0; b < bumps; ++b) {
      c[b] = unit(rng) * 0.5 * R;
      s[b] = (0.02 + 0.1 * unit(rng)) * R;
      a[b] = 0.1 + unit(rng);
    }
    const double noise = 0.05 * unit(rng);
    std::vector<double> vals(grid.nodes());
    for (int i = 0; i < grid.nodes(); ++i) {
      double v = 0.0;
      for (int b = 0; b < bumps; ++b) {
        const double z = (grid.r(i) - c[b]) / s[b];
        v += a[b] * std::exp(-0.5 * z * z);
      }
      vals[i] = v * (1.0 + noise * unit(rng));
    }
    const RadialProfile u(grid, std::move(vals));
    const RadialProfile us = schwarz_rearrange(u);
    const double m0 = mass(u);
    worst_mass = std::max(worst_mass, std::abs(mass(us) - m0) / m0);
    worst_grad = std::max(worst_grad, grad_norm_sq(us) / grad_norm_sq(u) - 1.0);
    const RadialProfile uss = schwarz_rearrange(us);
    bool same = true;
    for (int i = 0; i < us.size(); ++i) same = same && uss[i] == us[i];
    if (same) ++idem;
  }
  const std::string inst = "N=" + std::to_string(grid.dim()) + " profiles=" + std::to_string(count);
  TheoremVerdict vm = verdict("LEM32-mass", inst, tol.rearrange);
  vm.measured = {{"max_relative_mass_change", worst_mass}};
  vm.status = pass_if(worst_mass <= tol.rearrange);
  TheoremVerdict vg = verdict("LEM32-gradient", inst, 0.0);
  vg.measured = {{"max_relative_gradient_change", worst_grad}};
  vg.status = pass_if(worst_grad <= 1e-12);
  TheoremVerdict vi = verdict("LEM32-idempotent", inst, 0.0);
  vi.measured = {{"idempotent", static_cast<double>(idem)}};
  vi.status = pass_if(idem == count);
  return {vm, vg, vi};
}

std::vector<TheoremVerdict> verify_lemma41(const NonlinearityModel& model,
                                           const ShootResult& witness, const PathOptions& path) {
  const std::string inst = describe_instance(model, witness.N, "mu", witness.mu);
  TheoremVerdict v1 = verdict("LEM41-i", inst, 1e-8), v2 = verdict("LEM41-ii", inst, path.delta),
                 v3 = verdict("LEM41-iii", inst, 0.0);
  TheoremVerdict vk = verdict("LEM41-path", inst, 0.0);
  std::vector<TheoremVerdict*> all{&v1, &v2, &v3, &vk};
  if (!witness.decayed()) {
    for (auto* v : all) not_applicable(*v, "no decayed witness");
  } else {
    try {
      const PathRun run = mountain_pass_path(model, witness, path);
      const PathCheck& c = run.check;
      const std::string kind = to_string(run.kind);
      v1.measured = {{"J_w", c.J_w}, {"max_J", c.max_J}, {"J_T", c.J_T}, {"T", run.T}};
      v1.status = pass_if(c.endpoints && c.maximum);
      v2.measured = {{"samples", static_cast<double>(run.samples.size())}};
      v2.status = pass_if(c.separation);
      v3.measured = {{"m_T", c.m_T}, {"M", run.M_target}};
      v3.status = pass_if(c.mass_increasing);
      for (auto* v : {&v1, &v2, &v3}) {
        v->note = kind + " path";
        for (const auto& r : c.reasons)
          if (r.rfind(v == &v1 ? "(i)" : v == &v2 ? "(ii)" : "(iii)", 0) == 0) v->note += "; " + r;
      }
      vk.note = kind + " path";
      switch (run.kind) {
        case PathKind::Dilation:
          vk.tolerance = 1e-6;
          vk.measured = {{"formula_mismatch", run.formula_mismatch}};
          vk.status = pass_if(run.formula_mismatch <= 1e-6);
          break;
        case PathKind::Plateau:
          vk.measured = {{"eps", run.eps}};
          vk.status = pass_if(run.plateau_bound);
          vk.note += ", linear bound in ln t";
          break;
        case PathKind::TwoParameter:
          vk.measured = {{"theta_star", run.params->theta_star},
                         {"eps", run.params->eps},
                         {"s_star", run.params->s_star}};
          vk.status = pass_if(run.pattern_ok);
          if (!run.pattern_ok) vk.note += ", " + run.pattern_detail;
          break;
      }
    } catch (const Error& e) {
      for (auto* v : all) {
        v->status = VerdictStatus::Fail;
        v->note = std::string("path construction failed: ") + e.what();
      }
    }
  }
  return {v1, v2, v3, vk};
}

std::vector<TheoremVerdict> verify_lemma41(const NonlinearityModel& model, int N, double mu,
                                           const PathOptions& path, const ShootOptions& shoot) {
  ShootResult w;
  if (N == 1) {
    w = ground_state_radial(model, 1, mu, -1, shoot);
    if (!w.decayed()) w = ground_state_radial(model, 1, mu, 1, shoot);
  } else {
    w = ground_state_radial(model, N, mu, 1, shoot);
  }
  if (!w.decayed()) {
    w.N = N;
    w.mu = mu;
  }
  return verify_lemma41(model, w, path);
}

BaselineStore::BaselineStore(std::string path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  std::ifstream in(path_);
  if (!in) fail(ErrorCode::Io, "cannot read baseline file " + path_);
  try {
    const auto j = nlohmann::json::parse(in);
    for (auto it = j.begin(); it != j.end(); ++it) values_.emplace_back(it.key(), it->get<double>());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Io, "malformed baseline file " + path_ + ": " + e.what());
  }
}

TheoremVerdict BaselineStore::check(const std::string& key, double value, double rel_tol,
                                    const std::string& instance) {
  TheoremVerdict v = verdict("REG-" + key.substr(key.rfind('|') + 1), instance, rel_tol);
  v.measured = {{"value", value}};
  for (const auto& [k, stored] : values_) {
    if (k != key) continue;
    const double drift = std::abs(value - stored) / std::max(1.0, std::abs(stored));
    v.measured.push_back({"baseline", stored});
    v.measured.push_back({"relative_drift", drift});
    v.status = pass_if(drift <= rel_tol);
    return v;
  }
  values_.emplace_back(key, value);
  dirty_ = true;
  v.status = VerdictStatus::Pass;
  v.note = "baseline recorded";
  return v;
}

void BaselineStore::save() const {
  if (!dirty_) return;
  std::map<std::string, double> sorted(values_.begin(), values_.end());
  nlohmann::json j(sorted);
  const auto parent = std::filesystem::path(path_).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path_);
  if (!out) fail(ErrorCode::Io, "cannot write baseline file " + path_);
  out << std::setprecision(17) << j.dump(2) << '\n';
}

SuiteConfig::SuiteConfig(NonlinearityModel model_, int N_, RadialGrid grid_)
    : model(std::move(model_)), N(N_), grid(std::move(grid_)) {}

bool SuiteReport::any_fail() const {
  return std::any_of(verdicts.begin(), verdicts.end(),
                     [](const TheoremVerdict& v) { return v.status == VerdictStatus::Fail; });
}

int SuiteReport::count(VerdictStatus s) const {
  return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(),
                                        [&](const TheoremVerdict& v) { return v.status == s; }));
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  static const char* kSuites[] = {"all", "thm18", "thm14", "curve", "lemma31", "lemma32", "lemma41"};
  require(std::find(std::begin(kSuites), std::end(kSuites), cfg.suite) != std::end(kSuites),
          "unknown suite '" + cfg.suite + "'");
  require(cfg.grid.dim() == cfg.N, "grid dimension does not match N");
  auto wants = [&](const char* s) { return cfg.suite == "all" || cfg.suite == s; };
  const NonlinearityModel& model = cfg.model;
  const int N = cfg.N;
  const double margin = 10.0 * cfg.solver.tol;

  std::vector<TheoremVerdict> main, lem31, lem32;
  std::optional<BaselineStore> store;
  if (!cfg.baseline_path.empty()) store.emplace(cfg.baseline_path);
  const std::string key_prefix = model.describe() + "|N=" + std::to_string(N) + "|R=" +
                                 format_double(cfg.grid.radius()) + "|M=" +
                                 std::to_string(cfg.grid.intervals()) + "|";
  std::optional<MinimizeResult> minimizer;
  std::optional<double> mu_star;

  auto main_chain = [&] {
    std::optional<double> upper;
    const bool need_min = cfg.m > 0.0 && (wants("thm18") || wants("thm14") ||
                                          (wants("lemma41") && cfg.mus.empty()) ||
                                          (wants("lemma31") && cfg.mus.empty()));
    if (need_min) minimizer = minimize(model, N, cfg.m, cfg.grid, cfg.solver);
    if (minimizer && minimizer->converged && minimizer->mu > 0.0) mu_star = minimizer->mu;

    if (wants("curve")) {
      std::vector<double> masses = cfg.masses;
      if (masses.empty() && cfg.m > 0.0)
        masses = {0.25 * cfg.m, 0.5 * cfg.m, 0.75 * cfg.m, cfg.m};
      if (masses.empty()) {
        TheoremVerdict v = verdict("THM11", model.describe(), 0.0);
        not_applicable(v, "no masses configured");
        main.push_back(v);
      } else {
        CurveVerification cv =
            verify_curve(model, N, masses, cfg.grid, cfg.solver, cfg.mstar, cfg.tol, cfg.workers);
        main.insert(main.end(), cv.verdicts.begin(), cv.verdicts.end());
        if (cv.mstar) {
          if (cv.mstar->classification != MStarClass::Zero) upper = cv.mstar->upper;
          if (store && cv.mstar->classification != MStarClass::Zero) {
            const std::string inst = model.describe() + " N=" + std::to_string(N);
            main.push_back(store->check(key_prefix + "mstar_lower", cv.mstar->lower,
                                        cfg.tol.regression, inst));
            main.push_back(store->check(key_prefix + "mstar_upper", cv.mstar->upper,
                                        cfg.tol.regression, inst));
          }
        }
      }
    }

    const std::string inst = describe_instance(model, N, "m", cfg.m);
    std::optional<ShootResult> witness;
    if (wants("thm18")) {
      if (!minimizer) {
        TheoremVerdict v = verdict("THM18-i", model.describe(), cfg.tol.thm18);
        not_applicable(v, "no mass configured");
        main.push_back(v);
      } else {
        Thm18Outcome o = verify_thm18(model, *minimizer, cfg.tol.thm18, margin, upper, cfg.shoot);
        main.push_back(o.first);
        main.push_back(o.second);
        main.push_back(verify_identities(*minimizer, inst, cfg.tol.identity));
        if (o.least) {
          witness = o.least->witness;
          main.push_back(verify_identities(o.least->witness,
                                           describe_instance(model, N, "mu", o.least->witness.mu),
                                           cfg.tol.identity));
          if (store) {
            main.push_back(store->check(key_prefix + "m=" + format_double(cfg.m) + "|action",
                                        o.least->A, cfg.tol.regression, inst));
            main.push_back(store->check(key_prefix + "m=" + format_double(cfg.m) + "|energy",
                                        minimizer->E, cfg.tol.regression, inst));
          }
        }
      }
    }
    if (wants("thm14") && minimizer) {
      TheoremVerdict v = verify_thm14(*minimizer, inst);
      if (v.status != VerdictStatus::NotApplicable && !(minimizer->E < -margin))
        not_applicable(v, "E is not certified negative, so m is not above m*");
      main.push_back(v);
    }
    if (wants("lemma41")) {
      std::vector<double> mus = cfg.mus;
      if (mus.empty() && mu_star) mus.push_back(*mu_star);
      for (double mu : mus) {
        std::vector<TheoremVerdict> v;
        if (witness && witness->mu == mu && (N != 1 || witness->zeta < 0.0 || model.is_odd()))
          v = verify_lemma41(model, *witness, cfg.path);
        else
          v = verify_lemma41(model, N, mu, cfg.path, cfg.shoot);
        main.insert(main.end(), v.begin(), v.end());
      }
      if (mus.empty()) {
        TheoremVerdict v = verdict("LEM41-i", model.describe(), 0.0);
        not_applicable(v, "no mu configured and no minimizer multiplier");
        main.push_back(v);
      }
    }
  };

  auto lemma31_task = [&] {
    if (!wants("lemma31")) return;
    if (N != 1) {
      TheoremVerdict v = verdict("LEM31-a0", model.describe() + " N=" + std::to_string(N), 0.0);
      not_applicable(v, "one-dimensional claim");
      lem31.push_back(v);
      return;
    }
    std::vector<double> mus = cfg.mus;
    if (mus.empty() && cfg.m > 0.0) {
      // Needs the minimizer multiplier; computed independently of the main chain.
      const MinimizeResult r = minimize(model, N, cfg.m, cfg.grid, cfg.solver);
      if (r.converged && r.mu > 0.0) mus.push_back(r.mu);
    }
    if (mus.empty()) {
      TheoremVerdict v = verdict("LEM31-a0", model.describe(), 0.0);
      not_applicable(v, "no mu configured");
      lem31.push_back(v);
      return;
    }
    lem31 = verify_lemma31(model, mus, cfg.tol, cfg.shoot);
  };

  auto lemma32_task = [&] {
    if (!wants("lemma32")) return;
    lem32 = verify_lemma32(cfg.grid, cfg.rearrange_profiles, cfg.solver.seed, cfg.tol);
  };

  std::vector<std::function<void()>> tasks{main_chain, lemma31_task, lemma32_task};
  detail::parallel_for(static_cast<int>(tasks.size()), cfg.workers, [&](int i) { tasks[i](); });
  if (store) store->save();

  SuiteReport rep;
  for (auto* part : {&main, &lem31, &lem32})
    rep.verdicts.insert(rep.verdicts.end(), part->begin(), part->end());
  std::stable_sort(rep.verdicts.begin(), rep.verdicts.end(),
                   [](const TheoremVerdict& a, const TheoremVerdict& b) { return a.claim < b.claim; });
  return rep;
}

namespace {

std::string measured_text(const TheoremVerdict& v) {
  std::string s;
  for (const auto& m : v.measured) {
    if (!s.empty()) s += ';';
    s += m.name + "=" + format_double(m.value);
  }
  return s;
}

}  // namespace

void write_verdicts_csv(const std::vector<TheoremVerdict>& verdicts, const std::string& path) {
  CsvWriter w(path, {"claim", "instance", "status", "tolerance", "measured", "note"});
  for (const auto& v : verdicts)
    w.row({v.claim, v.instance, to_string(v.status), v.tolerance, measured_text(v), v.note});
  w.close();
}

void write_verdicts_table(const std::vector<TheoremVerdict>& verdicts, std::ostream& out) {
  std::size_t wc = 5, wi = 8;
  for (const auto& v : verdicts) {
    wc = std::max(wc, v.claim.size());
    wi = std::max(wi, v.instance.size());
  }
  out << std::left << std::setw(wc + 2) << "claim" << std::setw(16) << "status"
      << std::setw(wi + 2) << "instance" << "note\n";
  for (const auto& v : verdicts) {
    out << std::left << std::setw(wc + 2) << v.claim << std::setw(16) << to_string(v.status)
        << std::setw(wi + 2) << v.instance << v.note << '\n';
  }
}

}  // namespace gsmin
