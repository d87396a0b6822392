#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gsmin/minimizer.hpp"

namespace gsmin {

enum class MStarClass { Zero, Positive, Bracketed };
const char* to_string(MStarClass c);

struct MStarOptions {
  double m_lo = 0.1;
  double m_hi = 200.0;
  double tol_mass = 1e-2;
  double margin = 0.0;  // <= 0: 10 * solver tol
  int max_growth = 20;  // doublings of m_hi (and halvings of m_lo)
  int verify_restarts = 4;
  /// Zero-class spot checks. Each mass m is solved on the grid stretched by
  /// the natural length scale of the small-amplitude problem relative to
  /// spot_reference_mass, the mass the given grid is sized for (<= 0: the
  /// largest spot mass). Step, tolerance and margin are rescaled with it.
  std::vector<double> spot_masses{0.01, 0.1, 1.0};
  double spot_reference_mass = 4.0;
};

struct MStarLogRow {
  int iteration = 0;
  double m_lo = 0.0, m_hi = 0.0;
  bool certified_lo = false, certified_hi = false;
};

struct SpotCheck {
  double m = 0.0;
  double R = 0.0;  // stretched grid radius
  CurveRow row;
  bool certified = false;
};

struct MStarEstimate {
  MStarClass classification = MStarClass::Zero;
  double lower = 0.0, upper = 0.0, width = 0.0;
  double margin = 0.0;
  double E_upper = 0.0;  // certified energy at upper
  double E_lower = 0.0;  // best energy seen at lower
  bool endpoints_verified = true;
  std::vector<MStarLogRow> log;
  std::vector<SpotCheck> spot_checks;
  bool spot_checks_pass = true;
};

/// Zero-class models (small-mass class A1) return lower = upper = 0 after
/// the spot checks. Otherwise the predicate "a converged run certifies
/// E < -margin" is bisected: m_lo shrinks while it already holds, m_hi
/// doubles until it holds, then the bracket is halved to tol_mass and both
/// endpoints are re-run with verify_restarts restarts.
MStarEstimate estimate_mstar(const NonlinearityModel& model, int N, const RadialGrid& grid,
                             const SolverConfig& config, const MStarOptions& opts = {});

/// Spot checks used for the zero class; exposed for diagnostics.
std::vector<SpotCheck> small_mass_spot_checks(const NonlinearityModel& model, int N,
                                              const RadialGrid& grid, const SolverConfig& config,
                                              const MStarOptions& opts);

struct CurveReport {
  bool nonincreasing = false;
  bool subhomogeneous = false;
  bool concave_applicable = false;  // N >= 2
  bool concave = false;
  bool continuous = false;
  double continuity_constant = 0.0;  // max |dE / dm| between adjacent rows
  std::vector<double> masses, energies;  // values judged (positive E clamped to 0)
  std::vector<std::string> violations;
};

/// Checks the curve shape from converged rows (at least 4). A positive
/// energy on a bounded domain means E_m = 0 and is read as 0.
CurveReport curve_properties(const std::vector<CurveRow>& rows, int N, double tol = 1e-6);
CurveReport curve_properties(const std::vector<double>& masses, const std::vector<double>& energies,
                             int N, double tol = 1e-6);

struct PhiProbeRow {
  double m = 0.0;
  double phi = 0.0;        // m^(1-2/N) |grad u|^2 - m int F(u)
  double I_dilated = 0.0;  // I(u(m^(-1/N) .)) with the halved kinetic term
  std::optional<double> E_ref;
  std::optional<bool> above_curve;
};

/// Phi_u(m) for u of unit mass, N >= 2. Optional reference rows (same masses
/// or any masses present in the table) are compared with 2 tol slack.
std::vector<PhiProbeRow> phi_u_probe(const NonlinearityModel& model, const RadialProfile& u,
                                     const std::vector<double>& masses,
                                     const std::vector<CurveRow>* reference = nullptr,
                                     double tol = 1e-6);

/// CSV "iteration,m_lo,m_hi,status_lo,status_hi".
void write_mstar_log_csv(const MStarEstimate& est, const std::string& path);

}  // namespace gsmin
