#include "gsmin/functionals.hpp"

#include <cmath>

#include "gsmin/error.hpp"

namespace gsmin {

double ActionReport::pohozaev_relative() const {
  return std::abs(pohozaev_residual) / (1.0 + std::abs(J));
}
double ActionReport::nehari_relative() const {
  return std::abs(nehari_residual) / (1.0 + std::abs(J));
}

ProfileIntegrals profile_integrals(const NonlinearityModel& model, const RadialProfile& u) {
  ProfileIntegrals q;
  q.dim = u.grid().dim();
  q.grad_sq = grad_norm_sq(u);
  const auto w = u.grid().weights();
  for (int i = 0; i < u.size(); ++i) {
    const double v = u[i];
    q.mass += w[i] * v * v;
    if (v != 0.0) {
      q.int_F += w[i] * model.F(v);
      q.int_fu += w[i] * model.f(v) * v;
    }
  }
  return q;
}

EnergyReport energy_report(const ProfileIntegrals& q) {
  EnergyReport r;
  r.kinetic = 0.5 * q.grad_sq;
  r.potential = q.int_F;
  r.I = r.kinetic - r.potential;
  r.mass = q.mass;
  return r;
}

ActionReport action_report(const ProfileIntegrals& q, double mu) {
  const EnergyReport e = energy_report(q);
  ActionReport a;
  a.mu = mu;
  a.J = e.I + 0.5 * mu * q.mass;
  const double int_G = -0.5 * mu * q.mass + q.int_F;
  const double int_gu = -mu * q.mass + q.int_fu;
  const int N = q.dim;
  a.pohozaev_residual = (N - 2.0) / (2.0 * N) * q.grad_sq - int_G;
  a.nehari_residual = q.grad_sq - int_gu;
  return a;
}

EnergyReport energy_I(const NonlinearityModel& model, const RadialProfile& u) {
  return energy_report(profile_integrals(model, u));
}

ActionReport action_J(const NonlinearityModel& model, const RadialProfile& u, double mu) {
  require(std::isfinite(mu) && mu > 0.0, "mu must be positive");
  return action_report(profile_integrals(model, u), mu);
}

double multiplier_estimate(const NonlinearityModel& model, const RadialProfile& u) {
  const ProfileIntegrals q = profile_integrals(model, u);
  require(q.mass > 0.0, "multiplier estimate needs a profile with nonzero mass");
  return (q.int_fu - q.grad_sq) / q.mass;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotApplicable: return "not-applicable";
  }
  return "?";
}

CheckStatus multiplier_positivity_check(const EnergyReport& report, int N, double mu,
                                        double tol) {
  if (report.I > 0.0 || report.mass <= 0.0) return CheckStatus::NotApplicable;
  const double bound = (2.0 / N) * (2.0 * report.kinetic) / report.mass;
  return mu >= bound - tol ? CheckStatus::Pass : CheckStatus::Fail;
}

double euler_lagrange_residual(const NonlinearityModel& model, const RadialProfile& u,
                               double mu) {
  const auto w = u.grid().weights();
  const auto a = u.grid().stiffness();
  const int M = u.grid().intervals();
  double s = 0.0;
  for (int i = 0; i < M; ++i) {
    if (w[i] == 0.0) continue;
    double Ku = a[i] * (u[i] - u[i + 1]);
    if (i > 0) Ku += a[i - 1] * (u[i] - u[i - 1]);
    const double r = Ku / w[i] - model.f(u[i]) + mu * u[i];
    s += w[i] * r * r;
  }
  return std::sqrt(s);
}

}  // namespace gsmin
