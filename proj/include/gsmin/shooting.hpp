#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsmin/functionals.hpp"
#include "gsmin/nonlinearity.hpp"

namespace gsmin {

enum class ShootStatus { Decayed, BlewUp, Oscillated, NoSolution };
const char* to_string(ShootStatus s);

struct ShootOptions {
  double step = 1e-3;           // RK4 step (upper bound; adjusted to an even count)
  double length_factor = 40.0;  // domain [0, length_factor / sqrt(mu)]
  double blowup_factor = 10.0;  // |u| > factor * |start height|
  double decay_threshold = 1e-10;
  double capture_ratio = 1e-5;  // linear regime: |u| <= ratio * |start height|
  double capture_slope_tol = 1e-2;
};

struct Trajectory {
  std::vector<double> x, u, up;
  std::size_t size() const { return x.size(); }
};

struct ShootResult {
  int N = 1;
  double mu = 0.0;
  double zeta = 0.0;  // start height: zeta_+- for N = 1, b for N >= 2
  Trajectory trajectory;
  ShootStatus status = ShootStatus::NoSolution;
  bool crossed_zero = false;  // overshoot (as opposed to turning back)
  double capture_x = 0.0;     // start of the exact linear tail, 0 if none
  double action = 0.0;
  double mass = 0.0;
  ProfileIntegrals integrals;
  ActionReport residuals;
  double phase_energy_max_dev = 0.0;  // N = 1 only
  bool monotone = false;              // |u| strictly decreasing for x > 0
  bool zeta_barrier = false;          // N = 1: never returns past zeta
  std::string note;

  bool decayed() const { return status == ShootStatus::Decayed; }
  /// Value at x by linear interpolation (0 beyond the trajectory).
  double at(double x) const;
};

/// Shooting on the line: -u'' = g_mu(u) from (zeta, 0), with
/// zeta the extreme zero of G_mu of the requested sign. Refuses (NoSolution)
/// when zeta does not exist or g_mu(zeta) has the wrong sign.
ShootResult shoot_1d(const NonlinearityModel& model, double mu, int sign,
                     const ShootOptions& opts = {});

/// Radial shooting -u'' - (N-1)/r u' = g_mu(u), u(0) = b, u'(0) = 0
/// (N = 1 shoots on the line from an arbitrary height).
ShootResult shoot_radial(const NonlinearityModel& model, int N, double mu, double b,
                         const ShootOptions& opts = {});

/// Plain RK4 integration of the radial ODE on [0, r_end] with no event
/// handling (N = 1 drops the friction term).
Trajectory integrate_radial(const ShiftedNonlinearity& g, int N, double b, double r_end,
                            double step);

struct HeightSearch {
  double lo = 0.0, hi = 0.0;  // undershoot / overshoot heights
  int iterations = 0;
};

/// Bisection on the start height between an undershoot and an overshoot.
/// Returns the first decayed shot, or NoSolution when none is captured.
ShootResult ground_state_radial(const NonlinearityModel& model, int N, double mu, int sign,
                                const ShootOptions& opts = {}, HeightSearch* search = nullptr);

struct LeastActionResult {
  double A = 0.0;
  ShootResult witness;
  bool upper_bound_only = false;  // N >= 2: only radial positive/negative solutions are seen
  std::vector<ShootResult> candidates;
};

/// Smallest action among the decaying solutions found (both signs).
/// Throws NoSolution when none decays.
LeastActionResult least_action(const NonlinearityModel& model, int N, double mu,
                               const ShootOptions& opts = {});

/// CSV "x,u,uprime".
void write_trajectory_csv(const ShootResult& r, const std::string& path);
/// CSV "mu,zeta_or_b,action,mass,status", one row per shot.
void write_shoot_summary_csv(const std::vector<ShootResult>& results, const std::string& path);

}  // namespace gsmin
