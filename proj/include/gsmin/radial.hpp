#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace gsmin {

/// Uniform grid r_i = i h, i = 0..M, on [0, R] for radial functions on R^N.
/// N = 1 represents even functions on the line: omega_1 = 2 doubles the
/// half-line integral.
class RadialGrid {
 public:
  RadialGrid(int N, double R, int M);

  int dim() const { return N_; }
  double radius() const { return R_; }
  int intervals() const { return M_; }
  int nodes() const { return M_ + 1; }
  double h() const { return h_; }
  double r(int i) const { return i * h_; }
  /// Surface measure of the unit sphere, 2 pi^(N/2) / Gamma(N/2).
  double omega() const { return omega_; }

  /// Trapezoid weights omega_N r_i^(N-1) h (halved at the end nodes).
  std::span<const double> weights() const { return *weights_; }
  /// Stiffness coefficients omega_N r_(i+1/2)^(N-1) / h, i = 0..M-1.
  std::span<const double> stiffness() const { return *stiffness_; }

  bool operator==(const RadialGrid& o) const {
    return N_ == o.N_ && R_ == o.R_ && M_ == o.M_;
  }

 private:
  int N_;
  double R_;
  int M_;
  double h_;
  double omega_;
  std::shared_ptr<const std::vector<double>> weights_;
  std::shared_ptr<const std::vector<double>> stiffness_;
};

double sphere_measure(int N);

/// Samples u(r_i) of a radial function, Dirichlet at r = R.
class RadialProfile {
 public:
  RadialProfile(RadialGrid grid, std::vector<double> values);
  static RadialProfile zero(const RadialGrid& grid);
  static RadialProfile sample(const RadialGrid& grid, const std::function<double(double)>& fn);

  const RadialGrid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double operator[](int i) const { return values_[i]; }
  int size() const { return static_cast<int>(values_.size()); }
  double sup_norm() const;
  /// Linear interpolation; zero beyond R.
  double at(double r) const;

  RadialProfile scaled(double factor) const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

/// int |u|^2 dx (trapezoid with weight omega_N r^(N-1)).
double mass(const RadialProfile& u);

/// int |grad u|^2 dx (un-halved). Difference quotients at cell midpoints
/// r_(i+1/2) with midpoint weights; u'(0) = 0 needs no special node.
double grad_norm_sq(const RadialProfile& u);

/// int phi(u(x)) dx with the trapezoid weights.
double integrate(const RadialProfile& u, const std::function<double(double)>& phi);

/// Discrete L2 distance between two profiles on the same grid.
double l2_distance(const RadialProfile& a, const RadialProfile& b);

/// s <> u = e^(Ns/2) u(e^s .), preserves the L2 norm.
RadialProfile l2_scaling(double s, const RadialProfile& u);

/// u(. / t); mass scales by t^N and the Dirichlet integral by t^(N-2).
RadialProfile dilate(double t, const RadialProfile& u);

/// Symmetric decreasing rearrangement of a nonnegative profile.
///
/// The profile is read as a step function whose node i carries the cell
/// measure w_i (trapezoid weight). Values are sorted by size and stacked
/// outward by measure; each output node takes the root-mean-square of the
/// rearranged function over its own cell measure, so the discrete mass is
/// preserved to rounding and the result is nonincreasing in r.
RadialProfile schwarz_rearrange(const RadialProfile& u);

/// CSV with header "r,u", one row per node.
void write_profile_csv(const RadialProfile& u, const std::string& path);
RadialProfile read_profile_csv(const std::string& path, const RadialGrid& grid);

}  // namespace gsmin
