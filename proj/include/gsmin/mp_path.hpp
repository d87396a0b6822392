#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gsmin/shooting.hpp"

namespace gsmin {

struct PathSample {
  double t = 0.0;
  double log_t = -std::numeric_limits<double>::infinity();  // t may overflow on plateau paths
  double mass = 0.0;
  double action = 0.0;
  double action_formula = 0.0;  // dilation path only (closed form)
  double distance = 0.0;        // |gamma(t) - w|_{L2}
  int segment = 0;              // two-parameter path: 1..7
};

struct DilationPath {
  std::vector<PathSample> samples;
  double T = 0.0;
  double max_mismatch = 0.0;  // |formula - quadrature| / max(|formula|, J(w))
};

/// gamma(t) = w(. / t) for N >= 3. The action is computed both from the
/// closed form 1/2 (t^(N-2) - (N-2)/N t^N) int |grad w|^2 and by quadrature
/// of the dilated trajectory. T is the first doubling of 2 with
/// J(T) < -1 and m(T) > M_target.
DilationPath dilation_path(const NonlinearityModel& model, const ShootResult& w, int samples, double M_target);

struct PlateauPath {
  std::vector<PathSample> samples;
  double T = 0.0;  // inf when ln T exceeds the double range
  double log_T = 0.0;
  double eps = 0.0;
  double J_w = 0.0;       // J(gamma(1)) from the same quadrature
  bool bound_ok = false;  // J(t) <= J(w) - 2 G(zeta + s eps^4)(ln t - eps) for ln t > eps
};

/// N = 1: gamma(t) = W(|.| - ln t), W = w on [0, inf), zeta + s x^4 on
/// [-eps, 0) and zeta + s eps^4 beyond, s the sign of w. eps is the largest
/// dyadic value (down to 1e-4) with 8x^6 - G(zeta + s x^4) < 0 on a fine grid.
PlateauPath plateau_path_1d(const NonlinearityModel& model, const ShootResult& w, int samples, double M_target);

struct Path2DParams {
  double theta1 = 0.0, theta2 = 0.0;
  double theta_star = 0.0;
  double eps = 0.0;
  double s_star = 0.0;
  double vartheta_lo = 0.0;  // margin at s = 1 - eps
  double vartheta_hi = 0.0;  // margin at s = 1 + eps
  double s_end = 0.0;        // truncation of the last segment
};

/// Psi(theta, s) = J(theta w(. / s)) for a planar witness, from its integrals.
class Psi2D {
 public:
  Psi2D(const NonlinearityModel& model, const ShootResult& w);
  double value(double theta, double s) const;
  double d_theta(double theta, double s) const;
  double d_s(double theta, double s) const;
  double mass(double theta, double s) const;
  /// int G(theta w), int g(theta w) w, int h(theta w) w^2.
  double int_G(double theta) const;
  double int_gw(double theta) const;
  double int_hw2(double theta) const;
  double grad_sq() const { return K_; }
  /// |theta w(. / s) - w|_{L2}.
  double distance(double theta, double s) const;

 private:
  ShiftedNonlinearity g_;
  ShootResult w_;
  std::vector<double> weight_;  // Simpson weight times 2 pi r
  double K_ = 0.0, m_ = 0.0;
};

struct TwoParamPath {
  std::vector<PathSample> samples;
  Path2DParams params;
  double T = 0.0;
  bool pattern_ok = false;
  std::string pattern_detail;
};

/// N = 2: piecewise linear curve in (theta, s) through (0, s*), (1 - th*, s*),
/// (1 - th*, 1 - eps), (1, 1 - eps), (1, 1), (1, 1 + eps), (1 + th*, 1 + eps)
/// and then s -> infinity, parameterized by arc length.
TwoParamPath two_param_path_2d(const NonlinearityModel& model, const ShootResult& w, int samples_per_segment, double delta,
                               double M_target);

struct PathCheck {
  bool endpoints = false;   // gamma(0) = 0 and J(gamma(T)) < -1
  bool maximum = false;     // max J equals J(w)
  bool separation = false;  // J < J(w) wherever |gamma - w| >= delta
  bool mass_increasing = false;
  double J_w = 0.0, max_J = 0.0, J_T = 0.0, m_T = 0.0;
  std::vector<std::string> reasons;
  bool ok() const { return endpoints && maximum && separation && mass_increasing; }
};

PathCheck check_path(std::span<const PathSample> samples, double J_w, double delta,
                     double M_target);

struct PathOptions {
  int samples = 64;  // initial density (per segment for N = 2)
  double delta = 0.1;
  double M_target = 0.0;  // <= 0: mass of the witness
  int max_doublings = 4;
};

enum class PathKind { Dilation, Plateau, TwoParameter };
const char* to_string(PathKind k);

struct PathRun {
  PathKind kind = PathKind::Dilation;
  std::vector<PathSample> samples;
  double T = 0.0;
  double log_T = 0.0;
  double J_w = 0.0;
  double M_target = 0.0;
  PathCheck check;
  int density = 0;
  double formula_mismatch = 0.0;      // dilation
  double eps = 0.0;                   // plateau
  bool plateau_bound = true;          // plateau
  std::optional<Path2DParams> params; // two-parameter
  bool pattern_ok = true;             // two-parameter
  std::string pattern_detail;
};

/// Builds the path matching the witness dimension and checks it, doubling
/// the sampling density until two consecutive verdicts agree.
PathRun mountain_pass_path(const NonlinearityModel& model, const ShootResult& w, const PathOptions& opts = {});

/// CSV "t,mass,action,log_t".
void write_path_csv(std::span<const PathSample> samples, const std::string& path);

}  // namespace gsmin
