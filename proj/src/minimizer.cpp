#include "gsmin/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "gsmin/csv.hpp"
#include "gsmin/error.hpp"
#include "parallel.hpp"

namespace gsmin {

void SolverConfig::validate() const {
  require(std::isfinite(dt) && dt > 0.0, "solver dt must be positive");
  require(std::isfinite(tol) && tol > 0.0, "solver tol must be positive");
  require(max_iter >= 1, "solver max_iter must be >= 1");
  require(restarts >= 1, "solver restarts must be >= 1");
  require(workers >= 0, "workers must be >= 0");
  require(init_width > 0.0, "initial width must be positive");
  if (init == InitKind::File) require(!init_file.empty(), "init=file needs a profile path");
  if (init == InitKind::Profile) require(init_profile.has_value(), "init=profile needs a profile");
}

bool CurveRow::certified_negative(double margin) const {
  return result && result->converged && result->E < -margin;
}

namespace {

constexpr double kOverflowGuard = 1e8;

struct FlowState {
  std::vector<double> u;  // nodes 0..M-1; u_M = 0
  double I = 0.0;
};

class Flow {
 public:
  Flow(const NonlinearityModel& model, const RadialGrid& grid, double m)
      : model_(model), grid_(grid), m_(m), n_(grid.intervals()) {
    const auto w = grid.weights();
    const auto a = grid.stiffness();
    w_.assign(w.begin(), w.begin() + n_);
    diagK_.resize(n_);
    offK_.resize(n_ > 0 ? n_ - 1 : 0);
    for (int i = 0; i < n_; ++i) {
      diagK_[i] = a[i] + (i > 0 ? a[i - 1] : 0.0);
      if (i + 1 < n_) offK_[i] = -a[i];
    }
    cp_.resize(n_);
    dp_.resize(n_);
  }

  double mass(const std::vector<double>& u) const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += w_[i] * u[i] * u[i];
    return s;
  }

  double energy(const std::vector<double>& u) const {
    const auto a = grid_.stiffness();
    double kin = 0.0, pot = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double next = i + 1 < n_ ? u[i + 1] : 0.0;
      const double d = next - u[i];
      kin += a[i] * d * d;
      if (u[i] != 0.0) pot += w_[i] * model_.F(u[i]);
    }
    return 0.5 * kin - pot;
  }

  bool normalize(std::vector<double>& u) const {
    const double ms = mass(u);
    if (!(ms > 0.0) || !std::isfinite(ms)) return false;
    const double s = std::sqrt(m_ / ms);
    for (double& x : u) x *= s;
    return true;
  }

  // One semi-implicit step into out. Returns false on non-finite values.
  bool step(const std::vector<double>& u, double dt, std::vector<double>& out) {
    out.resize(n_);
    // The multiplier term makes fixed points exact solutions of the discrete
    // Euler-Lagrange equation K u = W (f(u) - mu u), independent of dt.
    fu_.resize(n_);
    double kin = 0.0, fuu = 0.0;
    for (int i = 0; i < n_; ++i) {
      fu_[i] = model_.f(u[i]);
      fuu += w_[i] * fu_[i] * u[i];
      const double next = i + 1 < n_ ? u[i + 1] : 0.0;
      kin += grid_.stiffness()[i] * (next - u[i]) * (next - u[i]);
    }
    const double mu = (fuu - kin) / mass(u);
    for (int i = 0; i < n_; ++i) out[i] = w_[i] * (u[i] + dt * (fu_[i] - mu * u[i]));
    // Thomas algorithm on W + dt K.
    for (int i = 0; i < n_; ++i) {
      const double diag = w_[i] + dt * diagK_[i];
      const double lower = i > 0 ? dt * offK_[i - 1] : 0.0;
      const double upper = i + 1 < n_ ? dt * offK_[i] : 0.0;
      const double denom = diag - (i > 0 ? lower * cp_[i - 1] : 0.0);
      cp_[i] = upper / denom;
      dp_[i] = (out[i] - (i > 0 ? lower * dp_[i - 1] : 0.0)) / denom;
    }
    for (int i = n_ - 1; i >= 0; --i) out[i] = dp_[i] - (i + 1 < n_ ? cp_[i] * out[i + 1] : 0.0);
    for (double x : out)
      if (!std::isfinite(x) || std::abs(x) > kOverflowGuard) return false;
    return normalize(out);
  }

  int size() const { return n_; }

 private:
  const NonlinearityModel& model_;
  const RadialGrid& grid_;
  double m_;
  int n_;
  std::vector<double> w_, diagK_, offK_, cp_, dp_, fu_;
};

struct RunOutcome {
  std::vector<double> u;
  double I = 0.0;
  int iterations = 0;
  int halvings = 0;
  bool converged = false;
  bool blew_up = false;
};

RunOutcome run_flow(Flow& flow, std::vector<double> u, const SolverConfig& cfg, double dt0) {
  RunOutcome out;
  if (!flow.normalize(u)) {
    out.blew_up = true;
    return out;
  }
  double I = flow.energy(u);
  double dt = dt0;
  int accepted_since_halving = 0;
  std::vector<double> next;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    out.iterations = it;
    const bool finite = flow.step(u, dt, next);
    const double In = finite ? flow.energy(next) : 0.0;
    if (!finite || !std::isfinite(In)) {
      out.blew_up = true;
      break;
    }
    if (In > I + 1e-12 * std::max(1.0, std::abs(I))) {
      dt *= 0.5;
      ++out.halvings;
      accepted_since_halving = 0;
      if (dt < 1e-12 * dt0) break;
      continue;
    }
    double change = 0.0;
    for (int i = 0; i < flow.size(); ++i) change = std::max(change, std::abs(next[i] - u[i]));
    u.swap(next);
    I = In;
    if (change / dt < cfg.tol) {
      out.converged = true;
      break;
    }
    if (++accepted_since_halving >= 50 && dt < dt0) {
      dt = std::min(2.0 * dt, dt0);
      accepted_since_halving = 0;
    }
  }
  out.u = std::move(u);
  out.I = I;
  return out;
}

std::vector<double> initial_profile(const RadialGrid& grid, const SolverConfig& cfg, int restart,
                                    std::mt19937_64& rng) {
  const int n = grid.intervals();
  std::vector<double> u(n);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double width = cfg.init_width;
  if (restart > 0) width *= std::exp2(unit(rng));

  switch (cfg.init) {
    case InitKind::Gaussian:
      for (int i = 0; i < n; ++i) {
        const double r = grid.r(i) / width;
        u[i] = std::exp(-0.5 * r * r);
      }
      break;
    case InitKind::RandomBump: {
      std::uniform_real_distribution<double> centre(0.0, 2.0 * width);
      std::uniform_real_distribution<double> spread(0.5 * width, 1.5 * width);
      std::uniform_real_distribution<double> amp(0.5, 1.0);
      for (int b = 0; b < 3; ++b) {
        const double c = b == 0 ? 0.0 : centre(rng), s = spread(rng), a = amp(rng);
        for (int i = 0; i < n; ++i) {
          const double z = (grid.r(i) - c) / s;
          u[i] += a * std::exp(-0.5 * z * z);
        }
      }
      break;
    }
    case InitKind::File:
    case InitKind::Profile: {
      const RadialProfile p = cfg.init == InitKind::File ? read_profile_csv(cfg.init_file, grid)
                                                         : *cfg.init_profile;
      require(p.grid() == grid, "initial profile grid does not match the solver grid");
      const double stretch = restart > 0 ? width / cfg.init_width : 1.0;
      for (int i = 0; i < n; ++i) u[i] = p.at(grid.r(i) / stretch);
      break;
    }
  }
  if (restart > 0)
    for (int i = 0; i < n; ++i) u[i] *= 1.0 + 1e-2 * gauss(rng);
  return u;
}

MinimizeResult finish(const NonlinearityModel& model, const RadialGrid& grid, double m,
                      RunOutcome run, int restart) {
  std::vector<double> values(std::move(run.u));
  values.push_back(0.0);
  RadialProfile profile(grid, std::move(values));
  const ProfileIntegrals q = profile_integrals(model, profile);
  MinimizeResult r{.profile = profile, .energy = {}, .residuals = {}};
  r.mass = q.mass;
  r.energy = energy_report(q);
  r.E = r.energy.I;
  if (!std::isfinite(r.E)) fail(ErrorCode::Numerical, "minimizer produced a non-finite energy");
  r.mu = q.mass > 0.0 ? (q.int_fu - q.grad_sq) / q.mass : 0.0;
  r.residuals = action_report(q, r.mu);
  r.el_residual = euler_lagrange_residual(model, profile, r.mu);
  r.iterations = run.iterations;
  r.converged = run.converged;
  r.restart_index = restart;
  r.dt_halvings = run.halvings;
  (void)m;
  return r;
}

bool better(const MinimizeResult& a, const MinimizeResult& b) {
  if (a.converged != b.converged) return a.converged;
  const double tie = 1e-12 * (1.0 + std::abs(b.E));
  if (std::abs(a.E - b.E) > tie) return a.E < b.E;
  return a.el_residual < b.el_residual;
}

}  // namespace

MinimizeResult minimize(const NonlinearityModel& model, int N, double m, const RadialGrid& grid,
                        const SolverConfig& config) {
  config.validate();
  require(grid.dim() == N, "grid dimension does not match N");
  require(std::isfinite(m) && m > 0.0, "mass must be positive");

  std::mt19937_64 rng(config.seed);
  std::vector<std::vector<double>> starts;
  for (int k = 0; k < config.restarts; ++k) starts.push_back(initial_profile(grid, config, k, rng));

  std::vector<std::optional<MinimizeResult>> results(config.restarts);
  detail::parallel_for(config.restarts, config.workers, [&](int k) {
    Flow flow(model, grid, m);
    double dt = config.dt;
    for (int attempt = 0; attempt < 8; ++attempt, dt *= 0.5) {
      RunOutcome run = run_flow(flow, starts[k], config, dt);
      if (run.blew_up) continue;
      results[k] = finish(model, grid, m, std::move(run), k);
      results[k]->dt_halvings += attempt;
      return;
    }
  });
  std::optional<MinimizeResult> best;
  for (auto& r : results)
    if (r && (!best || better(*r, *best))) best = std::move(r);
  if (!best) fail(ErrorCode::Numerical, "gradient flow blew up in every restart");
  return std::move(*best);
}

std::vector<CurveRow> energy_curve(const NonlinearityModel& model, int N,
                                   const std::vector<double>& masses, const RadialGrid& grid,
                                   const SolverConfig& config, const CurveOptions& opts) {
  for (std::size_t i = 1; i < masses.size(); ++i)
    require(masses[i] >= masses[i - 1], "energy curve masses must be nondecreasing");
  config.validate();

  std::vector<CurveRow> rows(masses.size());
  auto solve_row = [&](int i, const SolverConfig& cfg) {
    rows[i].m = masses[i];
    try {
      rows[i].result = minimize(model, N, masses[i], grid, cfg);
    } catch (const Error& e) {
      rows[i].error = e.what();
    }
  };
  if (opts.warm_start) {
    SolverConfig cfg = config;
    for (std::size_t i = 0; i < masses.size(); ++i) {
      solve_row(static_cast<int>(i), cfg);
      if (rows[i].ok()) {
        cfg.init = InitKind::Profile;
        cfg.init_profile = rows[i].result->profile;
      }
    }
  } else {
    SolverConfig cfg = config;
    if (detail::resolve_workers(opts.workers, static_cast<int>(masses.size())) > 1) cfg.workers = 1;
    detail::parallel_for(static_cast<int>(masses.size()), opts.workers,
                         [&](int i) { solve_row(i, cfg); });
  }
  return rows;
}

SignReport sign_monotonicity_check(const RadialProfile& u) {
  SignReport r;
  const double floor = 1e-8 * u.sup_norm();
  r.noise_floor = floor;
  bool pos = false, neg = false;
  bool mono = true;
  for (int i = 0; i < u.size(); ++i) {
    pos = pos || u[i] > floor;
    neg = neg || u[i] < -floor;
    if (i + 1 < u.size() && std::abs(u[i + 1]) > std::abs(u[i]) + floor) mono = false;
  }
  r.constant_sign = !(pos && neg);
  r.nonincreasing_modulus = mono;
  return r;
}

SignReport sign_monotonicity_check(const MinimizeResult& result) {
  return sign_monotonicity_check(result.profile);
}

void write_results_csv(const std::vector<CurveRow>& rows, const std::string& path) {
  CsvWriter w(path, {"m", "E", "mu", "kinetic", "potential", "pohozaev_residual",
                     "nehari_residual", "iterations", "converged"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : rows) {
    if (!row.result) {
      w.row({row.m, nan, nan, nan, nan, nan, nan, 0, false});
      continue;
    }
    const MinimizeResult& r = *row.result;
    w.row({row.m, r.E, r.mu, r.energy.kinetic, r.energy.potential, r.residuals.pohozaev_residual,
           r.residuals.nehari_residual, r.iterations, r.converged});
  }
  w.close();
}

}  // namespace gsmin
