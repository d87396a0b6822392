#include "gsmin/gsmin.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsmin/critical_mass.hpp"
#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "gsmin/minimizer.hpp"
#include "gsmin/mp_path.hpp"
#include "gsmin/nonlinearity.hpp"
#include "gsmin/shooting.hpp"
#include "gsmin/verification.hpp"

struct gsmin_model {
  gsmin::NonlinearityModel model;
  std::string descriptor;
};

struct gsmin_minimizer {
  gsmin::MinimizeResult result;
};

struct gsmin_curve {
  std::vector<gsmin::CurveRow> rows;
  int N = 1;
};

struct gsmin_mstar {
  gsmin::MStarEstimate est;
};

struct gsmin_shot {
  gsmin::ShootResult shot;
  std::optional<double> least;
};

struct gsmin_path {
  gsmin::PathRun run;
  std::string reasons;
};

struct gsmin_report {
  gsmin::SuiteReport report;
  std::string table;
};

namespace {

thread_local std::string g_last_error;

gsmin_status fail_with(gsmin_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

gsmin_status map_code(gsmin::ErrorCode c) {
  switch (c) {
    case gsmin::ErrorCode::InvalidArgument: return GSMIN_INVALID_ARGUMENT;
    case gsmin::ErrorCode::Numerical: return GSMIN_NUMERICAL;
    case gsmin::ErrorCode::NoSolution: return GSMIN_NO_SOLUTION;
    case gsmin::ErrorCode::Io: return GSMIN_IO;
  }
  return GSMIN_INTERNAL;
}

template <class Fn>
gsmin_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return GSMIN_OK;
  } catch (const gsmin::Error& e) {
    return fail_with(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail_with(GSMIN_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail_with(GSMIN_INTERNAL, e.what());
  }
}

#define GSMIN_NEED(ptr) \
  if (!(ptr)) return fail_with(GSMIN_INVALID_ARGUMENT, #ptr " must not be null")

gsmin::RadialGrid to_grid(const gsmin_grid* g) {
  return gsmin::RadialGrid(g->N, g->R, g->M);
}

gsmin::SolverConfig to_solver(const gsmin_solver_config* c) {
  gsmin::SolverConfig s;
  if (!c) return s;
  s.dt = c->dt;
  s.tol = c->tol;
  s.max_iter = c->max_iter;
  s.restarts = c->restarts;
  s.seed = c->seed;
  switch (c->init) {
    case GSMIN_INIT_GAUSSIAN: s.init = gsmin::InitKind::Gaussian; break;
    case GSMIN_INIT_RANDOM_BUMP: s.init = gsmin::InitKind::RandomBump; break;
    case GSMIN_INIT_FILE: s.init = gsmin::InitKind::File; break;
    default: gsmin::fail(gsmin::ErrorCode::InvalidArgument, "unknown init kind");
  }
  s.init_width = c->init_width;
  if (c->init_file) s.init_file = c->init_file;
  s.workers = c->workers;
  return s;
}

gsmin::ShootOptions to_shoot(const gsmin_shoot_options* o) {
  gsmin::ShootOptions s;
  if (!o) return s;
  s.step = o->step;
  s.length_factor = o->length_factor;
  s.blowup_factor = o->blowup_factor;
  s.decay_threshold = o->decay_threshold;
  s.capture_ratio = o->capture_ratio;
  s.capture_slope_tol = o->capture_slope_tol;
  return s;
}

gsmin::PathOptions to_path(const gsmin_path_options* o) {
  gsmin::PathOptions p;
  if (!o) return p;
  p.samples = o->samples;
  p.delta = o->delta;
  p.M_target = o->M_target;
  p.max_doublings = o->max_doublings;
  return p;
}

gsmin::MStarOptions to_mstar(const gsmin_mstar_options* o) {
  gsmin::MStarOptions m;
  if (!o) return m;
  m.m_lo = o->m_lo;
  m.m_hi = o->m_hi;
  m.tol_mass = o->tol_mass;
  m.margin = o->margin;
  m.max_growth = o->max_growth;
  m.verify_restarts = o->verify_restarts;
  if (o->spot_masses) m.spot_masses.assign(o->spot_masses, o->spot_masses + o->spot_count);
  m.spot_reference_mass = o->spot_reference_mass;
  return m;
}

gsmin_check to_check(gsmin::Verdict3 v) {
  switch (v) {
    case gsmin::Verdict3::Pass: return GSMIN_CHECK_PASS;
    case gsmin::Verdict3::Fail: return GSMIN_CHECK_FAIL;
    case gsmin::Verdict3::Sampled: return GSMIN_CHECK_SAMPLED;
  }
  return GSMIN_CHECK_FAIL;
}

void write_text(const std::string& path, const std::string& header,
                const std::vector<std::pair<double, double>>& rows) {
  std::ofstream out(path);
  if (!out) gsmin::fail(gsmin::ErrorCode::Io, "cannot open " + path + " for writing");
  out << header << '\n';
  for (const auto& [a, b] : rows) out << gsmin::format_double(a) << ' ' << gsmin::format_double(b) << '\n';
  if (!out) gsmin::fail(gsmin::ErrorCode::Io, "write failed for " + path);
}

gsmin_status make_shot(gsmin::ShootResult r, std::optional<double> least, gsmin_shot** out) {
  *out = new gsmin_shot{std::move(r), least};
  return GSMIN_OK;
}

}  // namespace

extern "C" {

const char* gsmin_last_error(void) { return g_last_error.c_str(); }

const char* gsmin_status_name(gsmin_status s) {
  switch (s) {
    case GSMIN_OK: return "ok";
    case GSMIN_INVALID_ARGUMENT: return "invalid argument";
    case GSMIN_NUMERICAL: return "numerical failure";
    case GSMIN_NO_SOLUTION: return "no solution";
    case GSMIN_IO: return "i/o error";
    case GSMIN_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* gsmin_version(void) { return "1.0.0"; }

gsmin_status gsmin_model_parse(const char* descriptor, gsmin_model** out) {
  GSMIN_NEED(descriptor);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto m = gsmin::parse_model(descriptor);
    std::string d = m.describe();
    *out = new gsmin_model{std::move(m), std::move(d)};
  });
}

gsmin_status gsmin_model_custom(gsmin_scalar_fn f, void* user, double exponent_at_zero,
                                double exponent_at_infinity, const char* name, gsmin_model** out) {
  GSMIN_NEED(f);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto m = gsmin::NonlinearityModel::custom([f, user](double t) { return f(t, user); },
                                              exponent_at_zero, exponent_at_infinity,
                                              name ? name : "custom");
    std::string d = m.describe();
    *out = new gsmin_model{std::move(m), std::move(d)};
  });
}

void gsmin_model_free(gsmin_model* model) { delete model; }

const char* gsmin_model_describe(const gsmin_model* model) {
  return model ? model->descriptor.c_str() : "";
}

gsmin_status gsmin_model_eval(const gsmin_model* model, double t, double* f, double* F) {
  GSMIN_NEED(model);
  return guarded([&] {
    if (f) *f = model->model.f(t);
    if (F) *F = model->model.F(t);
  });
}

gsmin_status gsmin_model_check(const gsmin_model* model, int N, gsmin_hypotheses* out) {
  GSMIN_NEED(model);
  GSMIN_NEED(out);
  return guarded([&] {
    const auto rep = gsmin::check_hypotheses(model->model, N);
    out->f1 = to_check(rep.f1.verdict);
    out->f2 = to_check(rep.f2.verdict);
    out->f3 = to_check(rep.f3.verdict);
    switch (gsmin::classify_small_mass(model->model, N)) {
      case gsmin::SmallMassClass::A1: out->small_mass = GSMIN_CLASS_A1; break;
      case gsmin::SmallMassClass::A2: out->small_mass = GSMIN_CLASS_A2; break;
      default: out->small_mass = GSMIN_CLASS_UNDETERMINED; break;
    }
  });
}

gsmin_status gsmin_model_zeta(const gsmin_model* model, double mu, int sign, int* found,
                              double* zeta, double* g_at_zeta) {
  GSMIN_NEED(model);
  GSMIN_NEED(found);
  return guarded([&] {
    gsmin::require(sign == 1 || sign == -1, "sign must be +1 or -1");
    const auto z = gsmin::find_zeta(gsmin::ShiftedNonlinearity(model->model, mu), sign);
    *found = z ? 1 : 0;
    if (z && zeta) *zeta = z->zeta;
    if (z && g_at_zeta) *g_at_zeta = z->g_at_zeta;
  });
}

void gsmin_solver_config_default(gsmin_solver_config* cfg) {
  if (!cfg) return;
  const gsmin::SolverConfig d;
  cfg->dt = d.dt;
  cfg->tol = d.tol;
  cfg->max_iter = d.max_iter;
  cfg->restarts = d.restarts;
  cfg->seed = d.seed;
  cfg->init = GSMIN_INIT_GAUSSIAN;
  cfg->init_width = d.init_width;
  cfg->init_file = nullptr;
  cfg->workers = d.workers;
}

gsmin_status gsmin_minimize(const gsmin_model* model, const gsmin_grid* grid, double m,
                            const gsmin_solver_config* cfg, gsmin_minimizer** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(grid);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto r = gsmin::minimize(model->model, grid->N, m, to_grid(grid), to_solver(cfg));
    *out = new gsmin_minimizer{std::move(r)};
  });
}

void gsmin_minimizer_free(gsmin_minimizer* h) { delete h; }

gsmin_status gsmin_minimizer_summary(const gsmin_minimizer* h, gsmin_minimize_summary* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  return guarded([&] {
    const auto& r = h->result;
    const auto s = gsmin::sign_monotonicity_check(r);
    *out = gsmin_minimize_summary{};
    out->mass = r.mass;
    out->E = r.E;
    out->mu = r.mu;
    out->kinetic = r.energy.kinetic;
    out->potential = r.energy.potential;
    out->pohozaev_relative = r.residuals.pohozaev_relative();
    out->nehari_relative = r.residuals.nehari_relative();
    out->pohozaev_residual = r.residuals.pohozaev_residual;
    out->nehari_residual = r.residuals.nehari_residual;
    out->el_residual = r.el_residual;
    out->iterations = r.iterations;
    out->converged = r.converged;
    out->restart_index = r.restart_index;
    out->dt_halvings = r.dt_halvings;
    out->energy_monotone = r.energy_monotone;
    out->constant_sign = s.constant_sign;
    out->nonincreasing_modulus = s.nonincreasing_modulus;
    out->nodes = static_cast<size_t>(r.profile.size());
  });
}

gsmin_status gsmin_minimizer_profile(const gsmin_minimizer* h, double* r, double* u, size_t cap) {
  GSMIN_NEED(h);
  const auto& p = h->result.profile;
  const size_t n = std::min(cap, static_cast<size_t>(p.size()));
  for (size_t i = 0; i < n; ++i) {
    if (r) r[i] = p.grid().r(static_cast<int>(i));
    if (u) u[i] = p[static_cast<int>(i)];
  }
  return GSMIN_OK;
}

gsmin_status gsmin_minimizer_write_profile(const gsmin_minimizer* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_profile_csv(h->result.profile, path); });
}

gsmin_status gsmin_minimizer_write_summary(const gsmin_minimizer* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] {
    gsmin::CurveRow row;
    row.m = h->result.mass;
    row.result = h->result;
    gsmin::write_results_csv({row}, path);
  });
}

gsmin_status gsmin_curve_run(const gsmin_model* model, const gsmin_grid* grid, const double* masses,
                             size_t count, const gsmin_solver_config* cfg, int warm_start,
                             int workers, gsmin_curve** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(grid);
  GSMIN_NEED(out);
  if (count > 0 && !masses) return fail_with(GSMIN_INVALID_ARGUMENT, "masses must not be null");
  *out = nullptr;
  return guarded([&] {
    gsmin::CurveOptions opts;
    opts.warm_start = warm_start != 0;
    opts.workers = workers;
    std::vector<double> ms(masses, masses + count);
    auto rows = gsmin::energy_curve(model->model, grid->N, ms, to_grid(grid), to_solver(cfg), opts);
    *out = new gsmin_curve{std::move(rows), grid->N};
  });
}

void gsmin_curve_free(gsmin_curve* h) { delete h; }

size_t gsmin_curve_size(const gsmin_curve* h) { return h ? h->rows.size() : 0; }

gsmin_status gsmin_curve_get(const gsmin_curve* h, size_t i, gsmin_curve_row* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  if (i >= h->rows.size()) return fail_with(GSMIN_INVALID_ARGUMENT, "row index out of range");
  const auto& row = h->rows[i];
  const double nan = std::nan("");
  *out = gsmin_curve_row{row.m, row.ok(), row.converged(), nan, nan, nan, nan, row.error.c_str()};
  if (row.result) {
    out->E = row.result->E;
    out->mu = row.result->mu;
    out->pohozaev_relative = row.result->residuals.pohozaev_relative();
    out->nehari_relative = row.result->residuals.nehari_relative();
  }
  return GSMIN_OK;
}

gsmin_status gsmin_curve_shape_check(const gsmin_curve* h, double tol, gsmin_curve_shape* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  return guarded([&] {
    const auto r = gsmin::curve_properties(h->rows, h->N, tol);
    out->nonincreasing = r.nonincreasing;
    out->subhomogeneous = r.subhomogeneous;
    out->concave_applicable = r.concave_applicable;
    out->concave = r.concave;
    out->continuous = r.continuous;
    out->continuity_constant = r.continuity_constant;
    out->rows_judged = static_cast<int>(r.masses.size());
  });
}

gsmin_status gsmin_curve_write_csv(const gsmin_curve* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_results_csv(h->rows, path); });
}

gsmin_status gsmin_curve_write_plot(const gsmin_curve* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] {
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : h->rows)
      if (row.converged()) pts.emplace_back(row.m, row.result->E);
    write_text(path, "# m E", pts);
  });
}

void gsmin_mstar_options_default(gsmin_mstar_options* opts) {
  if (!opts) return;
  static const gsmin::MStarOptions d;
  opts->m_lo = d.m_lo;
  opts->m_hi = d.m_hi;
  opts->tol_mass = d.tol_mass;
  opts->margin = d.margin;
  opts->max_growth = d.max_growth;
  opts->verify_restarts = d.verify_restarts;
  opts->spot_masses = nullptr;
  opts->spot_count = 0;
  opts->spot_reference_mass = d.spot_reference_mass;
}

gsmin_status gsmin_mstar_run(const gsmin_model* model, const gsmin_grid* grid,
                             const gsmin_solver_config* cfg, const gsmin_mstar_options* opts,
                             gsmin_mstar** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(grid);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto est = gsmin::estimate_mstar(model->model, grid->N, to_grid(grid), to_solver(cfg),
                                     to_mstar(opts));
    *out = new gsmin_mstar{std::move(est)};
  });
}

void gsmin_mstar_free(gsmin_mstar* h) { delete h; }

gsmin_status gsmin_mstar_summary_get(const gsmin_mstar* h, gsmin_mstar_summary* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  const auto& e = h->est;
  out->classification = e.classification == gsmin::MStarClass::Zero       ? GSMIN_MSTAR_ZERO
                        : e.classification == gsmin::MStarClass::Positive ? GSMIN_MSTAR_POSITIVE
                                                                          : GSMIN_MSTAR_BRACKETED;
  out->lower = e.lower;
  out->upper = e.upper;
  out->width = e.width;
  out->margin = e.margin;
  out->E_upper = e.E_upper;
  out->E_lower = e.E_lower;
  out->endpoints_verified = e.endpoints_verified;
  out->spot_checks_pass = e.spot_checks_pass;
  out->log_rows = e.log.size();
  out->spot_checks = e.spot_checks.size();
  return GSMIN_OK;
}

gsmin_status gsmin_mstar_spot(const gsmin_mstar* h, size_t i, double* m, double* E, int* certified) {
  GSMIN_NEED(h);
  if (i >= h->est.spot_checks.size())
    return fail_with(GSMIN_INVALID_ARGUMENT, "spot check index out of range");
  const auto& s = h->est.spot_checks[i];
  if (m) *m = s.m;
  if (E) *E = s.row.result ? s.row.result->E : std::nan("");
  if (certified) *certified = s.certified;
  return GSMIN_OK;
}

gsmin_status gsmin_mstar_write_log(const gsmin_mstar* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_mstar_log_csv(h->est, path); });
}

void gsmin_shoot_options_default(gsmin_shoot_options* opts) {
  if (!opts) return;
  const gsmin::ShootOptions d;
  *opts = gsmin_shoot_options{d.step, d.length_factor, d.blowup_factor,
                              d.decay_threshold, d.capture_ratio, d.capture_slope_tol};
}

gsmin_status gsmin_shoot_1d(const gsmin_model* model, double mu, int sign,
                            const gsmin_shoot_options* opts, gsmin_shot** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] { make_shot(gsmin::shoot_1d(model->model, mu, sign, to_shoot(opts)), {}, out); });
}

gsmin_status gsmin_shoot_radial(const gsmin_model* model, int N, double mu, double b,
                                const gsmin_shoot_options* opts, gsmin_shot** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded(
      [&] { make_shot(gsmin::shoot_radial(model->model, N, mu, b, to_shoot(opts)), {}, out); });
}

gsmin_status gsmin_ground_state(const gsmin_model* model, int N, double mu, int sign,
                                const gsmin_shoot_options* opts, gsmin_shot** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    make_shot(gsmin::ground_state_radial(model->model, N, mu, sign, to_shoot(opts)), {}, out);
  });
}

gsmin_status gsmin_least_action(const gsmin_model* model, int N, double mu,
                                const gsmin_shoot_options* opts, gsmin_shot** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto la = gsmin::least_action(model->model, N, mu, to_shoot(opts));
    make_shot(std::move(la.witness), la.A, out);
  });
}

void gsmin_shot_free(gsmin_shot* h) { delete h; }

gsmin_status gsmin_shot_summary_get(const gsmin_shot* h, gsmin_shot_summary* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  const auto& s = h->shot;
  *out = gsmin_shot_summary{};
  out->N = s.N;
  out->mu = s.mu;
  out->zeta = s.zeta;
  out->status = static_cast<gsmin_shot_status>(static_cast<int>(s.status));
  out->crossed_zero = s.crossed_zero;
  out->capture_x = s.capture_x;
  out->action = s.action;
  out->mass = s.mass;
  out->pohozaev_relative = s.residuals.pohozaev_relative();
  out->nehari_relative = s.residuals.nehari_relative();
  out->phase_energy_max_dev = s.phase_energy_max_dev;
  out->monotone = s.monotone;
  out->zeta_barrier = s.zeta_barrier;
  out->least_action = h->least.value_or(s.action);
  out->points = s.trajectory.size();
  return GSMIN_OK;
}

gsmin_status gsmin_shot_trajectory(const gsmin_shot* h, double* x, double* u, double* uprime,
                                   size_t cap) {
  GSMIN_NEED(h);
  const auto& t = h->shot.trajectory;
  const size_t n = std::min(cap, t.size());
  for (size_t i = 0; i < n; ++i) {
    if (x) x[i] = t.x[i];
    if (u) u[i] = t.u[i];
    if (uprime) uprime[i] = t.up[i];
  }
  return GSMIN_OK;
}

gsmin_status gsmin_shot_write_trajectory(const gsmin_shot* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_trajectory_csv(h->shot, path); });
}

gsmin_status gsmin_shot_write_summary(const gsmin_shot* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_shoot_summary_csv({h->shot}, path); });
}

void gsmin_path_options_default(gsmin_path_options* opts) {
  if (!opts) return;
  const gsmin::PathOptions d;
  *opts = gsmin_path_options{d.samples, d.delta, d.M_target, d.max_doublings};
}

gsmin_status gsmin_path_run(const gsmin_model* model, const gsmin_shot* witness,
                            const gsmin_path_options* opts, gsmin_path** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(witness);
  GSMIN_NEED(out);
  *out = nullptr;
  return guarded([&] {
    auto run = gsmin::mountain_pass_path(model->model, witness->shot, to_path(opts));
    std::string reasons;
    for (const auto& r : run.check.reasons) reasons += r + "\n";
    if (!run.pattern_ok && !run.pattern_detail.empty()) reasons += run.pattern_detail + "\n";
    *out = new gsmin_path{std::move(run), std::move(reasons)};
  });
}

void gsmin_path_free(gsmin_path* h) { delete h; }

gsmin_status gsmin_path_summary_get(const gsmin_path* h, gsmin_path_summary* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  const auto& r = h->run;
  *out = gsmin_path_summary{};
  out->kind = static_cast<gsmin_path_kind>(static_cast<int>(r.kind));
  out->T = r.T;
  out->log_T = r.log_T;
  out->J_w = r.J_w;
  out->M_target = r.M_target;
  out->endpoints = r.check.endpoints;
  out->maximum = r.check.maximum;
  out->separation = r.check.separation;
  out->mass_increasing = r.check.mass_increasing;
  out->ok = r.check.ok();
  out->max_J = r.check.max_J;
  out->J_T = r.check.J_T;
  out->m_T = r.check.m_T;
  out->density = r.density;
  out->formula_mismatch = r.formula_mismatch;
  out->eps = r.eps;
  out->plateau_bound = r.plateau_bound;
  out->pattern_ok = r.pattern_ok;
  out->samples = r.samples.size();
  return GSMIN_OK;
}

gsmin_status gsmin_path_sample_get(const gsmin_path* h, size_t i, gsmin_path_sample* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  if (i >= h->run.samples.size()) return fail_with(GSMIN_INVALID_ARGUMENT, "sample index out of range");
  const auto& s = h->run.samples[i];
  *out = gsmin_path_sample{s.t, s.log_t, s.mass, s.action};
  return GSMIN_OK;
}

const char* gsmin_path_reasons(const gsmin_path* h) { return h ? h->reasons.c_str() : ""; }

gsmin_status gsmin_path_write_csv(const gsmin_path* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_path_csv(h->run.samples, path); });
}

gsmin_status gsmin_path_write_plots(const gsmin_path* h, const char* action_path,
                                    const char* mass_path) {
  GSMIN_NEED(h);
  GSMIN_NEED(action_path);
  GSMIN_NEED(mass_path);
  return guarded([&] {
    const bool log_axis = h->run.kind == gsmin::PathKind::Plateau;
    std::vector<std::pair<double, double>> a, m;
    for (const auto& s : h->run.samples) {
      if (log_axis && !std::isfinite(s.log_t)) continue;
      const double x = log_axis ? s.log_t : s.t;
      a.emplace_back(x, s.action);
      m.emplace_back(x, s.mass);
    }
    write_text(action_path, log_axis ? "# ln_t J" : "# t J", a);
    write_text(mass_path, log_axis ? "# ln_t m" : "# t m", m);
  });
}

void gsmin_suite_config_default(gsmin_suite_config* cfg) {
  if (!cfg) return;
  *cfg = gsmin_suite_config{};
  cfg->suite = "all";
  gsmin_solver_config_default(&cfg->solver);
  gsmin_shoot_options_default(&cfg->shoot);
  gsmin_path_options_default(&cfg->path);
  gsmin_mstar_options_default(&cfg->mstar);
  const gsmin::VerifyTolerances t;
  cfg->tol = gsmin_tolerances{t.thm18, t.identity, t.phase, t.curve, t.rearrange, t.regression};
  cfg->rearrange_profiles = 100;
  cfg->baseline_path = nullptr;
  cfg->workers = 0;
}

gsmin_status gsmin_verify(const gsmin_model* model, const gsmin_grid* grid,
                          const gsmin_suite_config* cfg, gsmin_report** out) {
  GSMIN_NEED(model);
  GSMIN_NEED(grid);
  GSMIN_NEED(cfg);
  GSMIN_NEED(out);
  *out = nullptr;
  if (cfg->mass_count > 0 && !cfg->masses)
    return fail_with(GSMIN_INVALID_ARGUMENT, "masses must not be null");
  if (cfg->mu_count > 0 && !cfg->mus) return fail_with(GSMIN_INVALID_ARGUMENT, "mus must not be null");
  return guarded([&] {
    gsmin::SuiteConfig sc(model->model, grid->N, to_grid(grid));
    sc.suite = cfg->suite ? cfg->suite : "all";
    sc.m = cfg->m;
    sc.masses.assign(cfg->masses, cfg->masses + cfg->mass_count);
    sc.mus.assign(cfg->mus, cfg->mus + cfg->mu_count);
    sc.solver = to_solver(&cfg->solver);
    sc.shoot = to_shoot(&cfg->shoot);
    sc.path = to_path(&cfg->path);
    sc.mstar = to_mstar(&cfg->mstar);
    sc.tol = gsmin::VerifyTolerances{cfg->tol.thm18, cfg->tol.identity,  cfg->tol.phase,
                                     cfg->tol.curve, cfg->tol.rearrange, cfg->tol.regression};
    sc.rearrange_profiles = cfg->rearrange_profiles;
    if (cfg->baseline_path) sc.baseline_path = cfg->baseline_path;
    sc.workers = cfg->workers;
    auto rep = gsmin::run_suite(sc);
    std::ostringstream os;
    gsmin::write_verdicts_table(rep.verdicts, os);
    *out = new gsmin_report{std::move(rep), os.str()};
  });
}

void gsmin_report_free(gsmin_report* h) { delete h; }

size_t gsmin_report_size(const gsmin_report* h) { return h ? h->report.verdicts.size() : 0; }

gsmin_status gsmin_report_get(const gsmin_report* h, size_t i, gsmin_verdict* out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  if (i >= h->report.verdicts.size()) return fail_with(GSMIN_INVALID_ARGUMENT, "verdict index out of range");
  const auto& v = h->report.verdicts[i];
  out->claim = v.claim.c_str();
  out->instance = v.instance.c_str();
  out->note = v.note.c_str();
  out->status = v.status == gsmin::VerdictStatus::Pass   ? GSMIN_VERDICT_PASS
                : v.status == gsmin::VerdictStatus::Fail ? GSMIN_VERDICT_FAIL
                                                         : GSMIN_VERDICT_NA;
  out->tolerance = v.tolerance;
  out->measured = v.measured.size();
  return GSMIN_OK;
}

gsmin_status gsmin_report_measurement(const gsmin_report* h, size_t i, size_t j, const char** name,
                                      double* value) {
  GSMIN_NEED(h);
  if (i >= h->report.verdicts.size() || j >= h->report.verdicts[i].measured.size())
    return fail_with(GSMIN_INVALID_ARGUMENT, "measurement index out of range");
  const auto& m = h->report.verdicts[i].measured[j];
  if (name) *name = m.name.c_str();
  if (value) *value = m.value;
  return GSMIN_OK;
}

int gsmin_report_any_fail(const gsmin_report* h) { return h && h->report.any_fail(); }

gsmin_status gsmin_report_write_csv(const gsmin_report* h, const char* path) {
  GSMIN_NEED(h);
  GSMIN_NEED(path);
  return guarded([&] { gsmin::write_verdicts_csv(h->report.verdicts, path); });
}

gsmin_status gsmin_report_table(const gsmin_report* h, const char** out) {
  GSMIN_NEED(h);
  GSMIN_NEED(out);
  *out = h->table.c_str();
  return GSMIN_OK;
}

gsmin_status gsmin_rearrange(const gsmin_grid* grid, const double* u, double* out, double* mass_in,
                             double* mass_out) {
  GSMIN_NEED(grid);
  GSMIN_NEED(u);
  GSMIN_NEED(out);
  return guarded([&] {
    const gsmin::RadialGrid g = to_grid(grid);
    const gsmin::RadialProfile p(g, std::vector<double>(u, u + g.nodes()));
    const gsmin::RadialProfile s = gsmin::schwarz_rearrange(p);
    for (int i = 0; i < s.size(); ++i) out[i] = s[i];
    if (mass_in) *mass_in = gsmin::mass(p);
    if (mass_out) *mass_out = gsmin::mass(s);
  });
}

}  // extern "C"
