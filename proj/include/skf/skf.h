#ifndef SKF_SKF_H
#define SKF_SKF_H

/* C interface to the Killing-form verification library. Handles are opaque;
 * every call that can fail returns a status and leaves a message retrievable
 * with skf_last_error() on the calling thread. Strings returned through
 * char** are owned by the caller and released with skf_string_free(). */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skf_status {
  SKF_OK = 0,
  SKF_ERR_CONFIG = 1,   /* malformed or invalid configuration */
  SKF_ERR_ARGUMENT = 2, /* null handle, bad point, out-of-range value */
  SKF_ERR_INTERNAL = 3
} skf_status;

typedef struct skf_config skf_config;
typedef struct skf_report skf_report;

const char* skf_version(void);
const char* skf_last_error(void);

skf_status skf_config_default(skf_config** out);
skf_status skf_config_from_json(const char* json, skf_config** out);
skf_status skf_config_to_json(const skf_config* config, char** out);
skf_status skf_config_set_points(skf_config* config, int points);
skf_status skf_config_set_seed(skf_config* config, uint64_t seed);
/* "analytic" or "fd" */
skf_status skf_config_set_mode(skf_config* config, const char* mode);
skf_status skf_config_clear_checks(skf_config* config);
skf_status skf_config_add_check(skf_config* config, const char* name);
void skf_config_free(skf_config* config);

/* Newline-separated list of registered check names. */
skf_status skf_check_names(char** out);

skf_status skf_run(const skf_config* config, skf_report** out);
int skf_report_overall_pass(const skf_report* report);
size_t skf_report_check_count(const skf_report* report);
/* include_timing = 0 leaves out the wall-time fields. */
skf_status skf_report_json(const skf_report* report, int include_timing, char** out);
skf_status skf_report_summary(const skf_report* report, char** out);
void skf_report_free(skf_report* report);

/* Candidate forms at n_points base points, 5 coordinates each in the order
 * theta1, phi1, theta2, phi2, psi_angle. */
skf_status skf_emit_forms(const double* coords, size_t n_points, char** out);

void skf_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
