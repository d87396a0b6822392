#include <math.h>
#include <stdio.h>
#include <string.h>

#include "gsmin/gsmin.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

#define NEAR(a, b, tol) EXPECT(fabs((a) - (b)) <= (tol))

static double cubic_f(double t, void* user) {
  (void)user;
  return t * t * t;
}

static void test_errors(void) {
  gsmin_model* m = NULL;
  EXPECT(gsmin_model_parse("no-such-family", &m) == GSMIN_INVALID_ARGUMENT);
  EXPECT(m == NULL);
  EXPECT(strlen(gsmin_last_error()) > 0);
  EXPECT(gsmin_model_parse(NULL, &m) == GSMIN_INVALID_ARGUMENT);
  EXPECT(strcmp(gsmin_status_name(GSMIN_NO_SOLUTION), "no solution") == 0);
  EXPECT(strlen(gsmin_version()) > 0);
  gsmin_model_free(NULL);
}

static void test_model(void) {
  gsmin_model* m = NULL;
  EXPECT(gsmin_model_parse("single-power:p=4", &m) == GSMIN_OK);
  double f = 0, F = 0;
  EXPECT(gsmin_model_eval(m, 2.0, &f, &F) == GSMIN_OK);
  NEAR(f, 8.0, 1e-12);
  NEAR(F, 4.0, 1e-12);
  gsmin_hypotheses h;
  EXPECT(gsmin_model_check(m, 1, &h) == GSMIN_OK);
  EXPECT(h.small_mass == GSMIN_CLASS_A1);
  int found = 0;
  double zeta = 0, gz = 0;
  EXPECT(gsmin_model_zeta(m, 1.0, 1, &found, &zeta, &gz) == GSMIN_OK);
  EXPECT(found);
  NEAR(zeta, sqrt(2.0), 1e-10);
  gsmin_model_free(m);

  gsmin_model* c = NULL;
  EXPECT(gsmin_model_custom(cubic_f, NULL, 4.0, 4.0, "cubic", &c) == GSMIN_OK);
  EXPECT(gsmin_model_eval(c, 2.0, NULL, &F) == GSMIN_OK);
  NEAR(F, 4.0, 1e-8);
  gsmin_model_free(c);
}

static void test_minimize_and_shoot(void) {
  gsmin_model* m = NULL;
  gsmin_model_parse("single-power:p=4", &m);
  gsmin_grid grid = {1, 20.0, 4000};
  gsmin_solver_config cfg;
  gsmin_solver_config_default(&cfg);
  gsmin_minimizer* h = NULL;
  EXPECT(gsmin_minimize(m, &grid, 4.0, &cfg, &h) == GSMIN_OK);
  gsmin_minimize_summary s;
  EXPECT(gsmin_minimizer_summary(h, &s) == GSMIN_OK);
  NEAR(s.E, -2.0 / 3.0, 1e-3);
  NEAR(s.mu, 1.0, 1e-3);
  EXPECT(s.converged);
  EXPECT(s.nodes == 4001);
  double u[8];
  EXPECT(gsmin_minimizer_profile(h, NULL, u, 8) == GSMIN_OK);
  NEAR(fabs(u[0]), sqrt(2.0), 1e-2);
  gsmin_minimizer_free(h);

  gsmin_grid bad = {2, 20.0, 4000};
  h = NULL;
  EXPECT(gsmin_minimize(m, &bad, -1.0, &cfg, &h) == GSMIN_INVALID_ARGUMENT);
  EXPECT(h == NULL);

  gsmin_shot* w = NULL;
  EXPECT(gsmin_least_action(m, 1, 1.0, NULL, &w) == GSMIN_OK);
  gsmin_shot_summary ws;
  EXPECT(gsmin_shot_summary_get(w, &ws) == GSMIN_OK);
  NEAR(ws.least_action, 4.0 / 3.0, 1e-4);
  NEAR(ws.mass, 4.0, 1e-4);
  EXPECT(ws.status == GSMIN_SHOT_DECAYED);

  gsmin_path* p = NULL;
  EXPECT(gsmin_path_run(m, w, NULL, &p) == GSMIN_OK);
  gsmin_path_summary ps;
  EXPECT(gsmin_path_summary_get(p, &ps) == GSMIN_OK);
  EXPECT(ps.kind == GSMIN_PATH_PLATEAU);
  EXPECT(ps.ok);
  gsmin_path_sample last;
  EXPECT(gsmin_path_sample_get(p, ps.samples - 1, &last) == GSMIN_OK);
  NEAR(last.log_t, ps.log_T, 1e-9);
  EXPECT(gsmin_path_sample_get(p, ps.samples, &last) == GSMIN_INVALID_ARGUMENT);
  EXPECT(strlen(gsmin_path_reasons(p)) == 0);
  gsmin_path_free(p);
  gsmin_shot_free(w);

  gsmin_model* q = NULL;
  gsmin_model_parse("cubic-quintic", &q);
  w = NULL;
  EXPECT(gsmin_shoot_1d(q, 0.2, 1, NULL, &w) == GSMIN_OK);
  EXPECT(gsmin_shot_summary_get(w, &ws) == GSMIN_OK);
  EXPECT(ws.status == GSMIN_SHOT_NO_SOLUTION);
  gsmin_shot_free(w);
  w = NULL;
  EXPECT(gsmin_least_action(q, 1, 0.2, NULL, &w) == GSMIN_NO_SOLUTION);
  EXPECT(w == NULL);
  gsmin_model_free(q);
  gsmin_model_free(m);
}

static void test_rearrange(void) {
  gsmin_grid grid = {1, 16.0, 16};
  double u[17], out[17], a = 0, b = 0;
  for (int i = 0; i < 17; ++i) u[i] = (i > 4 && i < 12) ? (double)((i * 7) % 5) : 0.0;
  EXPECT(gsmin_rearrange(&grid, u, out, &a, &b) == GSMIN_OK);
  NEAR(a, b, 1e-12);
  for (int i = 1; i < 17; ++i) EXPECT(out[i] <= out[i - 1]);
  double neg[17] = {-1.0};
  EXPECT(gsmin_rearrange(&grid, neg, out, NULL, NULL) == GSMIN_INVALID_ARGUMENT);
}

static void test_verify(void) {
  gsmin_model* m = NULL;
  gsmin_model_parse("single-power:p=4", &m);
  gsmin_grid grid = {1, 20.0, 4000};
  gsmin_suite_config cfg;
  gsmin_suite_config_default(&cfg);
  cfg.suite = "lemma32";
  cfg.rearrange_profiles = 5;
  gsmin_report* r = NULL;
  EXPECT(gsmin_verify(m, &grid, &cfg, &r) == GSMIN_OK);
  EXPECT(gsmin_report_size(r) == 3);
  EXPECT(!gsmin_report_any_fail(r));
  gsmin_verdict v;
  EXPECT(gsmin_report_get(r, 0, &v) == GSMIN_OK);
  EXPECT(strncmp(v.claim, "LEM32", 5) == 0);
  EXPECT(v.status == GSMIN_VERDICT_PASS);
  if (v.measured > 0) {
    const char* name = NULL;
    double value = 0;
    EXPECT(gsmin_report_measurement(r, 0, 0, &name, &value) == GSMIN_OK);
    EXPECT(name && strlen(name) > 0);
  }
  const char* table = NULL;
  EXPECT(gsmin_report_table(r, &table) == GSMIN_OK);
  EXPECT(table && strstr(table, "LEM32") != NULL);
  gsmin_report_free(r);

  cfg.suite = "nonsense";
  r = NULL;
  EXPECT(gsmin_verify(m, &grid, &cfg, &r) == GSMIN_INVALID_ARGUMENT);
  gsmin_model_free(m);
}

int main(void) {
  test_errors();
  test_model();
  test_minimize_and_shoot();
  test_rearrange();
  test_verify();
  if (failures) fprintf(stderr, "%d check(s) failed\n", failures);
  else printf("all C API checks passed\n");
  return failures ? 1 : 0;
}
