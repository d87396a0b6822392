#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gsmin {

enum class Family { SinglePower, PowerSum, PowerDifference, CubicQuintic, Custom };

/// One term c * |t|^e / e of F (so that f gains c * |t|^(e-2) t).
struct PowerTerm {
  double coeff;
  double exponent;
};

/// Nonlinearity f together with its primitive F(t) = int_0^t f.
///
/// Built-in families are sums of odd power terms and are evaluated in closed
/// form. Custom models wrap an arbitrary callable; F is then obtained by
/// adaptive quadrature and the caller must declare the leading exponents of F
/// at 0 and at infinity, since those limits cannot be read off a black box.
class NonlinearityModel {
 public:
  using Callable = std::function<double(double)>;

  static NonlinearityModel single_power(double p, int sign = +1);
  static NonlinearityModel power_sum(double p, double q, double A);
  static NonlinearityModel power_difference(double p, double q);
  static NonlinearityModel cubic_quintic();
  static NonlinearityModel custom(Callable f, double exponent_at_zero,
                                  double exponent_at_infinity,
                                  std::string name = "custom");

  double f(double t) const;
  double F(double t) const;

  Family family() const { return family_; }
  bool is_builtin() const { return family_ != Family::Custom; }
  /// Built-ins are odd; custom models are treated as not odd.
  bool is_odd() const { return is_builtin(); }
  std::span<const PowerTerm> terms() const { return terms_; }
  double exponent_at_zero() const { return exp_zero_; }
  double exponent_at_infinity() const { return exp_inf_; }
  /// Canonical descriptor, e.g. "single-power:p=4".
  std::string describe() const;

  /// Absolute tolerance used by the quadrature for custom F.
  static constexpr double kCustomQuadratureTol = 1e-12;

 private:
  NonlinearityModel() = default;

  Family family_ = Family::SinglePower;
  std::vector<PowerTerm> terms_;
  Callable custom_;
  double exp_zero_ = 0.0;
  double exp_inf_ = 0.0;
  std::string name_;
  std::string descriptor_;
};

/// Parses "single-power:p=4", "single-power:p=4,sign=-1",
/// "power-sum:p=3,q=2.5,A=1", "power-difference:p=4,q=6" or "cubic-quintic".
NonlinearityModel parse_model(std::string_view descriptor);

/// g_mu(t) = -mu t + f(t) and G_mu(t) = -mu t^2 / 2 + F(t).
class ShiftedNonlinearity {
 public:
  ShiftedNonlinearity(NonlinearityModel base, double mu);

  double g(double t) const { return -mu_ * t + base_.f(t); }
  double G(double t) const { return -0.5 * mu_ * t * t + base_.F(t); }
  double mu() const { return mu_; }
  const NonlinearityModel& base() const { return base_; }

 private:
  NonlinearityModel base_;
  double mu_;
};

enum class Verdict3 { Pass, Fail, Sampled };

struct HypothesisCheck {
  Verdict3 verdict = Verdict3::Pass;
  std::string detail;
  bool ok() const { return verdict != Verdict3::Fail; }
};

struct HypothesisReport {
  HypothesisCheck f1, f2, f3;
  bool all_pass() const { return f1.ok() && f2.ok() && f3.ok(); }
};

/// Decides (f1)-(f3) for dimension N. Built-ins are decided from their
/// exponents; custom models are sampled on a logarithmic grid.
/// Throws InvalidArgument when a family's exponent range is violated for N.
HypothesisReport check_hypotheses(const NonlinearityModel& model, int N);

enum class SmallMassClass { A1, A2, Undetermined };

/// A1: F(t)/|t|^(2+4/N) -> +inf at 0 (critical mass is zero).
/// A2: that ratio stays bounded above (critical mass is positive).
SmallMassClass classify_small_mass(const NonlinearityModel& model, int N);

const char* to_string(SmallMassClass c);
const char* to_string(Verdict3 v);

struct Zeta {
  double zeta;
  double g_at_zeta;
};

struct ZetaOptions {
  double tol = 1e-12;
  double scan_start = 1e-8;
  double scan_limit = 1e8;
};

/// Extreme zero of G_mu nearest the origin on the side given by sign (+1 or
/// -1): zeta_+ = inf{t > 0 : G_mu(t) = 0}, zeta_- = sup{t < 0 : G_mu(t) = 0}.
/// Returns nullopt when G_mu has no zero in the scan range.
std::optional<Zeta> find_zeta(const ShiftedNonlinearity& shifted, int sign,
                              const ZetaOptions& opts = {});

}  // namespace gsmin
