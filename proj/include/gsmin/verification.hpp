#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gsmin/critical_mass.hpp"
#include "gsmin/minimizer.hpp"
#include "gsmin/mp_path.hpp"
#include "gsmin/shooting.hpp"

namespace gsmin {

enum class VerdictStatus { Pass, Fail, NotApplicable };
const char* to_string(VerdictStatus s);

struct Measurement {
  std::string name;
  double value = 0.0;
};

struct TheoremVerdict {
  std::string claim;     // e.g. "THM18-i"
  std::string instance;  // model, N, m or mu
  std::vector<Measurement> measured;
  double tolerance = 0.0;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::string note;

  std::optional<double> value(const std::string& name) const;
};

struct VerifyTolerances {
  double thm18 = 5e-3;     // |A - (E + mu m / 2)|, witness mass and energy
  double identity = 1e-3;  // relative Pohozaev and Nehari residuals
  double phase = 1e-6;     // phase-plane energy drift
  double curve = 1e-6;     // curve shape slack (2 tol is allowed)
  double rearrange = 1e-10;
  double regression = 1e-6;  // relative drift against stored baselines
};

std::string describe_instance(const NonlinearityModel& model, int N, const char* key, double value);

struct Thm18Outcome {
  TheoremVerdict first;   // A = E + mu m / 2
  TheoremVerdict second;  // witness mass m and I(w) = E
  std::optional<MinimizeResult> minimizer;
  std::optional<LeastActionResult> least;
};

/// Runs least_action at the minimizer's multiplier. mstar_upper, when known,
/// is the upper end of the critical-mass bracket (m must exceed it).
Thm18Outcome verify_thm18(const NonlinearityModel& model, int N, double m, const RadialGrid& grid,
                          const SolverConfig& config, double tol,
                          std::optional<double> mstar_upper = std::nullopt,
                          const ShootOptions& shoot = {});
Thm18Outcome verify_thm18(const NonlinearityModel& model, const MinimizeResult& minimizer,
                          double tol, double margin, std::optional<double> mstar_upper = std::nullopt,
                          const ShootOptions& shoot = {});

TheoremVerdict verify_thm14(const MinimizeResult& result, const std::string& instance);

/// Relative Pohozaev and Nehari residuals of a minimizer or a decayed witness.
TheoremVerdict verify_identities(const MinimizeResult& result, const std::string& instance,
                                 double tol);
TheoremVerdict verify_identities(const ShootResult& witness, const std::string& instance,
                                 double tol);

struct CurveVerification {
  std::vector<TheoremVerdict> verdicts;
  std::vector<CurveRow> rows;
  std::optional<MStarEstimate> mstar;
};

/// THM11-i..iv, LEM22-ii..v and REM23 from an energy curve and an m* estimate.
CurveVerification verify_curve(const NonlinearityModel& model, int N,
                               const std::vector<double>& masses, const RadialGrid& grid,
                               const SolverConfig& config, const MStarOptions& mstar,
                               const VerifyTolerances& tol, int workers = 0);

/// One verdict per sub-claim of the one-dimensional classification for each
/// mu and sign.
std::vector<TheoremVerdict> verify_lemma31(const NonlinearityModel& model,
                                           const std::vector<double>& mus,
                                           const VerifyTolerances& tol,
                                           const ShootOptions& shoot = {});

/// Rearrangement on `count` random nonnegative profiles of the grid.
std::vector<TheoremVerdict> verify_lemma32(const RadialGrid& grid, int count, std::uint64_t seed,
                                           const VerifyTolerances& tol);

std::vector<TheoremVerdict> verify_lemma41(const NonlinearityModel& model, int N, double mu,
                                           const PathOptions& path,
                                           const ShootOptions& shoot = {});
std::vector<TheoremVerdict> verify_lemma41(const NonlinearityModel& model,
                                           const ShootResult& witness, const PathOptions& path);

/// Values without closed forms, stored as JSON on first use and compared
/// (relative tolerance) afterwards.
class BaselineStore {
 public:
  explicit BaselineStore(std::string path);
  /// Pass when recorded now or within tolerance of the stored value.
  TheoremVerdict check(const std::string& key, double value, double rel_tol,
                       const std::string& instance);
  void save() const;

 private:
  std::string path_;
  std::vector<std::pair<std::string, double>> values_;
  bool dirty_ = false;
};

struct SuiteConfig {
  SuiteConfig(NonlinearityModel model, int N, RadialGrid grid);

  std::string suite = "all";  // all, thm18, thm14, curve, lemma31, lemma32, lemma41
  NonlinearityModel model;
  int N;
  RadialGrid grid;
  double m = 0.0;                 // 0: skip the mass-based claims
  std::vector<double> masses;     // curve masses (empty: derived from m)
  std::vector<double> mus;        // lemma31 / lemma41 (empty: from the minimizer)
  SolverConfig solver;
  ShootOptions shoot;
  PathOptions path;
  MStarOptions mstar;
  VerifyTolerances tol;
  int rearrange_profiles = 100;
  std::string baseline_path;  // empty: no regression baselines
  int workers = 0;
};

struct SuiteReport {
  std::vector<TheoremVerdict> verdicts;  // ordered by claim id
  bool any_fail() const;
  int count(VerdictStatus s) const;
};

SuiteReport run_suite(const SuiteConfig& cfg);

/// CSV "claim,instance,status,tolerance,measured,note".
void write_verdicts_csv(const std::vector<TheoremVerdict>& verdicts, const std::string& path);
void write_verdicts_table(const std::vector<TheoremVerdict>& verdicts, std::ostream& out);

}  // namespace gsmin
