#pragma once

#include "gsmin/nonlinearity.hpp"
#include "gsmin/radial.hpp"

namespace gsmin {

struct EnergyReport {
  double kinetic = 0.0;    // (1/2) int |grad u|^2
  double potential = 0.0;  // int F(u)
  double I = 0.0;          // kinetic - potential
  double mass = 0.0;
};

struct ActionReport {
  double J = 0.0;
  double pohozaev_residual = 0.0;  // (N-2)/(2N) int |grad u|^2 - int G_mu(u)
  double nehari_residual = 0.0;    // int |grad u|^2 - int g_mu(u) u
  double mu = 0.0;

  /// Residuals scaled by (1 + |J|).
  double pohozaev_relative() const;
  double nehari_relative() const;
};

/// Integrals that determine every functional evaluated here. Kept separate so
/// that shooting trajectories (integrated with their own quadrature) feed the
/// same formulas as grid profiles.
struct ProfileIntegrals {
  int dim = 1;
  double grad_sq = 0.0;   // int |grad u|^2
  double mass = 0.0;      // int u^2
  double int_F = 0.0;     // int F(u)
  double int_fu = 0.0;    // int f(u) u
};

ProfileIntegrals profile_integrals(const NonlinearityModel& model, const RadialProfile& u);

EnergyReport energy_report(const ProfileIntegrals& q);
ActionReport action_report(const ProfileIntegrals& q, double mu);

EnergyReport energy_I(const NonlinearityModel& model, const RadialProfile& u);
ActionReport action_J(const NonlinearityModel& model, const RadialProfile& u, double mu);

/// mu = (int f(u) u - int |grad u|^2) / mass, read off by testing the
/// Euler-Lagrange equation with u.
double multiplier_estimate(const NonlinearityModel& model, const RadialProfile& u);

enum class CheckStatus { Pass, Fail, NotApplicable };
const char* to_string(CheckStatus s);

/// For a minimizer with I <= 0, I - P = (1/N) int |grad v|^2 - mu m / 2 <= 0
/// forces mu >= (2/N) int |grad v|^2 / m.
CheckStatus multiplier_positivity_check(const EnergyReport& report, int N, double mu,
                                        double tol = 1e-6);

/// Discrete L2 norm of -Lap u - f(u) + mu u over the free nodes.
double euler_lagrange_residual(const NonlinearityModel& model, const RadialProfile& u, double mu);

}  // namespace gsmin
