#ifndef GSMIN_H
#define GSMIN_H

#include <stddef.h>
#include <stdint.h>

#if defined(GSMIN_BUILDING_LIBRARY)
#define GSMIN_API __attribute__((visibility("default")))
#else
#define GSMIN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes returned by every fallible call. */
typedef enum {
  GSMIN_OK = 0,
  GSMIN_INVALID_ARGUMENT = 1,
  GSMIN_NUMERICAL = 2,
  GSMIN_NO_SOLUTION = 3,
  GSMIN_IO = 4,
  GSMIN_INTERNAL = 5
} gsmin_status;

/* Message of the last failed call on this thread ("" if none). */
GSMIN_API const char* gsmin_last_error(void);
GSMIN_API const char* gsmin_status_name(gsmin_status s);
GSMIN_API const char* gsmin_version(void);

/* ---- nonlinearity ---- */

typedef struct gsmin_model gsmin_model;
typedef double (*gsmin_scalar_fn)(double t, void* user);

GSMIN_API gsmin_status gsmin_model_parse(const char* descriptor, gsmin_model** out);
/* f is called from worker threads and must be thread-safe. */
GSMIN_API gsmin_status gsmin_model_custom(gsmin_scalar_fn f, void* user, double exponent_at_zero,
                                          double exponent_at_infinity, const char* name,
                                          gsmin_model** out);
GSMIN_API void gsmin_model_free(gsmin_model* model);
/* Canonical descriptor; valid while the model lives. */
GSMIN_API const char* gsmin_model_describe(const gsmin_model* model);
GSMIN_API gsmin_status gsmin_model_eval(const gsmin_model* model, double t, double* f, double* F);

typedef enum { GSMIN_CHECK_PASS = 0, GSMIN_CHECK_FAIL = 1, GSMIN_CHECK_SAMPLED = 2 } gsmin_check;
typedef enum { GSMIN_CLASS_A1 = 0, GSMIN_CLASS_A2 = 1, GSMIN_CLASS_UNDETERMINED = 2 } gsmin_small_mass_class;

typedef struct {
  gsmin_check f1, f2, f3;
  gsmin_small_mass_class small_mass;
} gsmin_hypotheses;

GSMIN_API gsmin_status gsmin_model_check(const gsmin_model* model, int N, gsmin_hypotheses* out);

/* Extreme zero of G_mu = F - mu t^2 / 2 on the side of sign. *found = 0 when none. */
GSMIN_API gsmin_status gsmin_model_zeta(const gsmin_model* model, double mu, int sign, int* found,
                                        double* zeta, double* g_at_zeta);

/* ---- shared configuration ---- */

typedef struct {
  int N;
  double R;
  int M;
} gsmin_grid;

typedef enum { GSMIN_INIT_GAUSSIAN = 0, GSMIN_INIT_RANDOM_BUMP = 1, GSMIN_INIT_FILE = 2 } gsmin_init;

typedef struct {
  double dt;
  double tol;
  int max_iter;
  int restarts;
  uint64_t seed;
  gsmin_init init;
  double init_width;
  const char* init_file; /* profile CSV "r,u" for GSMIN_INIT_FILE */
  int workers;           /* 0: hardware concurrency */
} gsmin_solver_config;

GSMIN_API void gsmin_solver_config_default(gsmin_solver_config* cfg);

/* ---- minimizer ---- */

typedef struct gsmin_minimizer gsmin_minimizer;

typedef struct {
  double mass, E, mu;
  double kinetic, potential;
  double pohozaev_relative, nehari_relative;
  double pohozaev_residual, nehari_residual;
  double el_residual;
  int iterations;
  int converged;
  int restart_index;
  int dt_halvings;
  int energy_monotone;
  int constant_sign;
  int nonincreasing_modulus;
  size_t nodes;
} gsmin_minimize_summary;

GSMIN_API gsmin_status gsmin_minimize(const gsmin_model* model, const gsmin_grid* grid, double m,
                                      const gsmin_solver_config* cfg, gsmin_minimizer** out);
GSMIN_API void gsmin_minimizer_free(gsmin_minimizer* h);
GSMIN_API gsmin_status gsmin_minimizer_summary(const gsmin_minimizer* h, gsmin_minimize_summary* out);
/* Copies min(cap, nodes) samples; either buffer may be NULL. */
GSMIN_API gsmin_status gsmin_minimizer_profile(const gsmin_minimizer* h, double* r, double* u,
                                               size_t cap);
GSMIN_API gsmin_status gsmin_minimizer_write_profile(const gsmin_minimizer* h, const char* path);
GSMIN_API gsmin_status gsmin_minimizer_write_summary(const gsmin_minimizer* h, const char* path);

/* ---- energy curve ---- */

typedef struct gsmin_curve gsmin_curve;

typedef struct {
  double m;
  int ok;
  int converged;
  double E, mu;
  double pohozaev_relative, nehari_relative;
  const char* error; /* valid while the curve lives */
} gsmin_curve_row;

typedef struct {
  int nonincreasing, subhomogeneous, concave_applicable, concave, continuous;
  double continuity_constant;
  int rows_judged;
} gsmin_curve_shape;

GSMIN_API gsmin_status gsmin_curve_run(const gsmin_model* model, const gsmin_grid* grid,
                                       const double* masses, size_t count,
                                       const gsmin_solver_config* cfg, int warm_start,
                                       int workers, gsmin_curve** out);
GSMIN_API void gsmin_curve_free(gsmin_curve* h);
GSMIN_API size_t gsmin_curve_size(const gsmin_curve* h);
GSMIN_API gsmin_status gsmin_curve_get(const gsmin_curve* h, size_t i, gsmin_curve_row* out);
/* Fails with GSMIN_INVALID_ARGUMENT when fewer than 4 rows converged. */
GSMIN_API gsmin_status gsmin_curve_shape_check(const gsmin_curve* h, double tol,
                                               gsmin_curve_shape* out);
GSMIN_API gsmin_status gsmin_curve_write_csv(const gsmin_curve* h, const char* path);
/* Two-column "m E" text of the converged rows. */
GSMIN_API gsmin_status gsmin_curve_write_plot(const gsmin_curve* h, const char* path);

/* ---- critical mass ---- */

typedef struct gsmin_mstar gsmin_mstar;

typedef enum { GSMIN_MSTAR_ZERO = 0, GSMIN_MSTAR_POSITIVE = 1, GSMIN_MSTAR_BRACKETED = 2 } gsmin_mstar_class;

typedef struct {
  double m_lo, m_hi, tol_mass;
  double margin; /* <= 0: 10 * solver tol */
  int max_growth;
  int verify_restarts;
  const double* spot_masses; /* NULL: defaults */
  size_t spot_count;
  double spot_reference_mass;
} gsmin_mstar_options;

typedef struct {
  gsmin_mstar_class classification;
  double lower, upper, width, margin;
  double E_upper, E_lower;
  int endpoints_verified;
  int spot_checks_pass;
  size_t log_rows;
  size_t spot_checks;
} gsmin_mstar_summary;

GSMIN_API void gsmin_mstar_options_default(gsmin_mstar_options* opts);
GSMIN_API gsmin_status gsmin_mstar_run(const gsmin_model* model, const gsmin_grid* grid,
                                       const gsmin_solver_config* cfg,
                                       const gsmin_mstar_options* opts, gsmin_mstar** out);
GSMIN_API void gsmin_mstar_free(gsmin_mstar* h);
GSMIN_API gsmin_status gsmin_mstar_summary_get(const gsmin_mstar* h, gsmin_mstar_summary* out);
GSMIN_API gsmin_status gsmin_mstar_spot(const gsmin_mstar* h, size_t i, double* m, double* E,
                                        int* certified);
GSMIN_API gsmin_status gsmin_mstar_write_log(const gsmin_mstar* h, const char* path);

/* ---- shooting ---- */

typedef struct gsmin_shot gsmin_shot;

typedef enum {
  GSMIN_SHOT_DECAYED = 0,
  GSMIN_SHOT_BLEW_UP = 1,
  GSMIN_SHOT_OSCILLATED = 2,
  GSMIN_SHOT_NO_SOLUTION = 3
} gsmin_shot_status;

typedef struct {
  double step;
  double length_factor;
  double blowup_factor;
  double decay_threshold;
  double capture_ratio;
  double capture_slope_tol;
} gsmin_shoot_options;

typedef struct {
  int N;
  double mu, zeta;
  gsmin_shot_status status;
  int crossed_zero;
  double capture_x;
  double action, mass;
  double pohozaev_relative, nehari_relative;
  double phase_energy_max_dev;
  int monotone;
  int zeta_barrier;
  double least_action; /* set by gsmin_least_action, else equals action */
  size_t points;
} gsmin_shot_summary;

GSMIN_API void gsmin_shoot_options_default(gsmin_shoot_options* opts);
/* Shot from zeta of the given sign on the line. */
GSMIN_API gsmin_status gsmin_shoot_1d(const gsmin_model* model, double mu, int sign,
                                      const gsmin_shoot_options* opts, gsmin_shot** out);
/* Single radial shot from height b. */
GSMIN_API gsmin_status gsmin_shoot_radial(const gsmin_model* model, int N, double mu, double b,
                                          const gsmin_shoot_options* opts, gsmin_shot** out);
/* Height bisection for a decaying solution of the given sign. */
GSMIN_API gsmin_status gsmin_ground_state(const gsmin_model* model, int N, double mu, int sign,
                                          const gsmin_shoot_options* opts, gsmin_shot** out);
/* Least action witness over both signs; GSMIN_NO_SOLUTION when none decays. */
GSMIN_API gsmin_status gsmin_least_action(const gsmin_model* model, int N, double mu,
                                          const gsmin_shoot_options* opts, gsmin_shot** out);
GSMIN_API void gsmin_shot_free(gsmin_shot* h);
GSMIN_API gsmin_status gsmin_shot_summary_get(const gsmin_shot* h, gsmin_shot_summary* out);
GSMIN_API gsmin_status gsmin_shot_trajectory(const gsmin_shot* h, double* x, double* u,
                                             double* uprime, size_t cap);
GSMIN_API gsmin_status gsmin_shot_write_trajectory(const gsmin_shot* h, const char* path);
GSMIN_API gsmin_status gsmin_shot_write_summary(const gsmin_shot* h, const char* path);

/* ---- mountain-pass path ---- */

typedef struct gsmin_path gsmin_path;

typedef enum { GSMIN_PATH_DILATION = 0, GSMIN_PATH_PLATEAU = 1, GSMIN_PATH_TWO_PARAMETER = 2 } gsmin_path_kind;

typedef struct {
  int samples;
  double delta;
  double M_target; /* <= 0: witness mass */
  int max_doublings;
} gsmin_path_options;

typedef struct {
  gsmin_path_kind kind;
  double T, log_T; /* T is inf when ln T exceeds the double range (plateau paths) */
  double J_w, M_target;
  int endpoints, maximum, separation, mass_increasing, ok;
  double max_J, J_T, m_T;
  int density;
  double formula_mismatch;
  double eps;
  int plateau_bound;
  int pattern_ok;
  size_t samples;
} gsmin_path_summary;

typedef struct {
  double t, log_t, mass, action;
} gsmin_path_sample;

GSMIN_API void gsmin_path_options_default(gsmin_path_options* opts);
GSMIN_API gsmin_status gsmin_path_run(const gsmin_model* model, const gsmin_shot* witness,
                                      const gsmin_path_options* opts, gsmin_path** out);
GSMIN_API void gsmin_path_free(gsmin_path* h);
GSMIN_API gsmin_status gsmin_path_summary_get(const gsmin_path* h, gsmin_path_summary* out);
GSMIN_API gsmin_status gsmin_path_sample_get(const gsmin_path* h, size_t i, gsmin_path_sample* out);
/* Newline-separated reasons for failed checks; valid while the path lives. */
GSMIN_API const char* gsmin_path_reasons(const gsmin_path* h);
GSMIN_API gsmin_status gsmin_path_write_csv(const gsmin_path* h, const char* path);
/* Two-column "t J" and "t m" text files ("ln_t" for plateau paths). */
GSMIN_API gsmin_status gsmin_path_write_plots(const gsmin_path* h, const char* action_path,
                                              const char* mass_path);

/* ---- verification suite ---- */

typedef struct gsmin_report gsmin_report;

typedef enum { GSMIN_VERDICT_PASS = 0, GSMIN_VERDICT_FAIL = 1, GSMIN_VERDICT_NA = 2 } gsmin_verdict_status;

typedef struct {
  double thm18, identity, phase, curve, rearrange, regression;
} gsmin_tolerances;

typedef struct {
  const char* suite; /* all, thm18, thm14, curve, lemma31, lemma32, lemma41 */
  double m;          /* 0: skip mass-based claims */
  const double* masses;
  size_t mass_count;
  const double* mus;
  size_t mu_count;
  gsmin_solver_config solver;
  gsmin_shoot_options shoot;
  gsmin_path_options path;
  gsmin_mstar_options mstar;
  gsmin_tolerances tol;
  int rearrange_profiles;
  const char* baseline_path; /* NULL or "": no regression baselines */
  int workers;
} gsmin_suite_config;

typedef struct {
  const char* claim;
  const char* instance;
  const char* note;
  gsmin_verdict_status status;
  double tolerance;
  size_t measured;
} gsmin_verdict;

GSMIN_API void gsmin_suite_config_default(gsmin_suite_config* cfg);
GSMIN_API gsmin_status gsmin_verify(const gsmin_model* model, const gsmin_grid* grid,
                                    const gsmin_suite_config* cfg, gsmin_report** out);
GSMIN_API void gsmin_report_free(gsmin_report* h);
GSMIN_API size_t gsmin_report_size(const gsmin_report* h);
/* Strings are valid while the report lives. */
GSMIN_API gsmin_status gsmin_report_get(const gsmin_report* h, size_t i, gsmin_verdict* out);
GSMIN_API gsmin_status gsmin_report_measurement(const gsmin_report* h, size_t i, size_t j,
                                                const char** name, double* value);
GSMIN_API int gsmin_report_any_fail(const gsmin_report* h);
GSMIN_API gsmin_status gsmin_report_write_csv(const gsmin_report* h, const char* path);
/* Plain-text summary table; *out is valid while the report lives. */
GSMIN_API gsmin_status gsmin_report_table(const gsmin_report* h, const char** out);

/* ---- rearrangement ---- */

/* Symmetric decreasing rearrangement of n = M + 1 nonnegative samples on the grid. */
GSMIN_API gsmin_status gsmin_rearrange(const gsmin_grid* grid, const double* u, double* out,
                                       double* mass_in, double* mass_out);

#ifdef __cplusplus
}
#endif

#endif
