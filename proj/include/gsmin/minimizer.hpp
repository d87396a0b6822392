#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsmin/functionals.hpp"
#include "gsmin/nonlinearity.hpp"
#include "gsmin/radial.hpp"

namespace gsmin {

enum class InitKind { Gaussian, RandomBump, File, Profile };

struct SolverConfig {
  double dt = 0.5;
  double tol = 1e-9;  // on sup |u_{k+1} - u_k| / dt
  int max_iter = 200000;
  int restarts = 2;
  std::uint64_t seed = 12345;
  InitKind init = InitKind::Gaussian;
  double init_width = 1.0;
  std::string init_file;
  std::optional<RadialProfile> init_profile;  // used with InitKind::Profile
  int workers = 0;  // restarts run in parallel; 0: hardware concurrency

  void validate() const;
};

struct MinimizeResult {
  RadialProfile profile;
  double mass = 0.0;
  double E = 0.0;
  double mu = 0.0;
  EnergyReport energy;
  ActionReport residuals;
  double el_residual = 0.0;  // discrete L2 norm of -Lap u - f(u) + mu u
  int iterations = 0;
  bool converged = false;
  int restart_index = 0;
  int dt_halvings = 0;
  bool energy_monotone = true;
};

/// Normalized gradient flow on S_m: each step solves
/// (W + dt K) u* = W (u + dt (f(u) - mu u)) with mu the current multiplier
/// estimate (Laplacian implicit, nonlinearity explicit) and rescales u = sqrt(m) u* / |u*|. A step that raises the
/// energy is rejected and dt halved. Restarts are drawn from one seeded
/// stream, run in parallel, and the best converged run (lowest I) wins.
MinimizeResult minimize(const NonlinearityModel& model, int N, double m, const RadialGrid& grid,
                        const SolverConfig& config);

struct CurveRow {
  double m = 0.0;
  std::optional<MinimizeResult> result;
  std::string error;

  bool ok() const { return result.has_value(); }
  bool converged() const { return result && result->converged; }
  /// Converged with E < -margin.
  bool certified_negative(double margin) const;
};

struct CurveOptions {
  bool warm_start = false;
  int workers = 0;  // 0: hardware concurrency
};

/// One independent minimize run per mass (nondecreasing order); rows are
/// returned in input order. Per-row errors are recorded, not thrown.
std::vector<CurveRow> energy_curve(const NonlinearityModel& model, int N,
                                   const std::vector<double>& masses, const RadialGrid& grid,
                                   const SolverConfig& config, const CurveOptions& opts = {});

struct SignReport {
  bool constant_sign = false;
  bool nonincreasing_modulus = false;
  double noise_floor = 0.0;
};

/// Noise floor 1e-8 |u|_inf: no strict sign change and |u| nonincreasing in r
/// above that floor.
SignReport sign_monotonicity_check(const RadialProfile& u);
SignReport sign_monotonicity_check(const MinimizeResult& result);

/// CSV "m,E,mu,kinetic,potential,pohozaev_residual,nehari_residual,iterations,converged";
/// failed rows carry nan values.
void write_results_csv(const std::vector<CurveRow>& rows, const std::string& path);

}  // namespace gsmin
