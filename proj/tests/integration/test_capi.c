/* Exercises the C interface from C. */

#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "skf/skf.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void test_errors(void) {
  skf_config* c = NULL;
  EXPECT(skf_config_from_json("{\"checks\": [\"nope\"]}", &c) == SKF_ERR_CONFIG);
  EXPECT(c == NULL);
  EXPECT(strstr(skf_last_error(), "nope") != NULL);
  EXPECT(skf_config_from_json("not json", &c) == SKF_ERR_CONFIG);
  EXPECT(skf_config_default(NULL) == SKF_ERR_ARGUMENT);
  EXPECT(skf_run(NULL, NULL) == SKF_ERR_ARGUMENT);

  EXPECT(skf_config_default(&c) == SKF_OK);
  EXPECT(skf_config_set_points(c, 0) == SKF_ERR_CONFIG);
  EXPECT(skf_config_set_mode(c, "symbolic") == SKF_ERR_CONFIG);
  EXPECT(skf_config_add_check(c, "bogus") == SKF_ERR_CONFIG);
  skf_config_free(c);

  char* out = NULL;
  double bad[2] = {1.0, 2.0};
  EXPECT(skf_emit_forms(bad, 0, &out) == SKF_ERR_ARGUMENT);
}

static void test_run(void) {
  skf_config* c = NULL;
  skf_report* r1 = NULL;
  skf_report* r2 = NULL;
  char *j1 = NULL, *j2 = NULL, *summary = NULL, *cfg = NULL;

  EXPECT(skf_config_default(&c) == SKF_OK);
  EXPECT(skf_config_clear_checks(c) == SKF_OK);
  EXPECT(skf_config_add_check(c, "einstein") == SKF_OK);
  EXPECT(skf_config_add_check(c, "momentum") == SKF_OK);
  EXPECT(skf_config_set_points(c, 15) == SKF_OK);
  EXPECT(skf_config_set_seed(c, 9) == SKF_OK);
  EXPECT(skf_config_to_json(c, &cfg) == SKF_OK);
  EXPECT(strstr(cfg, "\"points\": 15") != NULL);

  EXPECT(skf_run(c, &r1) == SKF_OK);
  EXPECT(skf_run(c, &r2) == SKF_OK);
  EXPECT(skf_report_overall_pass(r1) == 1);
  EXPECT(skf_report_check_count(r1) == 2);
  EXPECT(skf_report_json(r1, 0, &j1) == SKF_OK);
  EXPECT(skf_report_json(r2, 0, &j2) == SKF_OK);
  EXPECT(strcmp(j1, j2) == 0);
  EXPECT(strstr(j1, "\"seconds\"") == NULL);
  EXPECT(strstr(j1, "\"overall_pass\": true") != NULL);
  EXPECT(skf_report_summary(r1, &summary) == SKF_OK);
  EXPECT(strstr(summary, "overall: PASS") != NULL);

  skf_string_free(j1);
  skf_string_free(j2);
  skf_string_free(summary);
  skf_string_free(cfg);
  skf_report_free(r1);
  skf_report_free(r2);
  skf_config_free(c);
}

static void test_forms(void) {
  const double h = 1.5707963267948966;
  double at[5] = {h, 0.0, h, 0.0, 0.0};
  char* out = NULL;
  char* names = NULL;
  EXPECT(skf_emit_forms(at, 1, &out) == SKF_OK);
  EXPECT(strstr(out, "\"RePsi\"") != NULL);
  EXPECT(strstr(out, "\"dtheta1^dtheta2\": 1.0") != NULL);
  skf_string_free(out);
  EXPECT(skf_check_names(&names) == SKF_OK);
  EXPECT(strstr(names, "paper-displays\n") != NULL);
  skf_string_free(names);
  EXPECT(strlen(skf_version()) > 0);
}

int main(void) {
  test_errors();
  test_run();
  test_forms();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("C API: all checks passed\n");
  return 0;
}
