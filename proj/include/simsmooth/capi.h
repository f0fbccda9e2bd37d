/* C interface to the simultaneous smoothing library: opaque handles, integer
 * status codes, and JSON/CSV strings on the wire.  Every function returns
 * SS_OK or an error code; on error, ss_last_error() holds a thread-local
 * message describing the failure.  Strings returned through char** are
 * malloc'd and must be released with ss_string_free(). */

#ifndef SIMSMOOTH_CAPI_H
#define SIMSMOOTH_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ss_status {
    SS_OK = 0,
    SS_ERR_INVALID_ARGUMENT = 1,  /* bad parameter value or syntax */
    SS_ERR_PARSE = 2,             /* malformed JSON document */
    SS_ERR_INVALID_STATE = 3,     /* document violates a state invariant */
    SS_ERR_UNSUPPORTED_FAMILY = 4, /* subset family fits no strategy */
    SS_ERR_TOO_LARGE = 5,         /* instance exceeds a documented size limit */
    SS_ERR_IO = 6,                /* filesystem failure */
    SS_ERR_INTERNAL = 7           /* unexpected numerical or logic failure */
} ss_status;

typedef struct ss_state ss_state;
typedef struct ss_report ss_report;

const char* ss_status_name(ss_status status);
const char* ss_last_error(void);
const char* ss_version(void);
void ss_string_free(char* text);
void ss_state_free(ss_state* state);
void ss_report_free(ss_report* report);

/* ---------- states ----------
 * Documents carry "dims" plus exactly one of "matrix" (row-major [re, im]
 * pairs) or "classical" (nonnegative weights).  dims strings look like
 * "2,3,2"; kind is one of "pure", "mixed", "classical", "classical-sparse";
 * subset strings are 1-based, comma within a subset, semicolon between
 * subsets, e.g. "1;2;1,2". */

ss_status ss_state_from_json(const char* text, ss_state** out);
ss_status ss_state_load(const char* path, ss_state** out);
ss_status ss_state_to_json(const ss_state* state, char** out);
ss_status ss_state_save(const ss_state* state, const char* path);
ss_status ss_state_random(const char* dims, const char* kind, uint64_t seed, ss_state** out);
/* The adversarial grid on (2n^2+1)^2 cells; active defaults to "1;2;1,2"
 * when NULL or empty. */
ss_status ss_state_worst_case(int n, const char* active, ss_state** out);

int ss_state_party_count(const ss_state* state);
long ss_state_total_dim(const ss_state* state);
double ss_state_trace(const ss_state* state);
int ss_state_is_classical(const ss_state* state);

/* ---------- entropies ----------
 * subset NULL or "" means the whole system.  When *infinite is set the state
 * (or its relevant part) vanished and bits is meaningless. */

ss_status ss_min_entropy(const ss_state* state, const char* subset, double* bits, int* infinite);
ss_status ss_smooth_min_entropy(const ss_state* state, const char* subset, double eps,
                                const char* metric, double* bits, int* infinite);

/* ---------- smoothing ----------
 * metric is "trace", "purified", or NULL for automatic: trace when the
 * embedded marginals commute (classical instances), purified otherwise. */

ss_status ss_smooth(const ss_state* state, const char* subsets, double eps, const char* metric,
                    ss_state** sigma_out, ss_report** report_out);
ss_status ss_verify_pair(const ss_state* rho, const ss_state* sigma, const char* subsets,
                         double eps, const char* metric, ss_report** report_out);

ss_status ss_report_to_json(const ss_report* report, char** out);
ss_status ss_report_to_csv(const ss_report* report, char** out);
int ss_report_entropy_pass(const ss_report* report);
int ss_report_distance_pass(const ss_report* report);

/* ---------- batch drivers ----------
 * format is "json" or "csv".  dims NULL/"" and eps < 0 and trials <= 0 pick
 * the per-suite defaults; threads <= 0 uses the hardware count and the
 * SIMSMOOTH_THREADS environment variable caps it either way. */

ss_status ss_suite_names(char** out);  /* newline-separated */
ss_status ss_run_suite(const char* name, const char* dims, double eps, int trials, uint64_t seed,
                       int threads, const char* format, char** out, int* all_pass,
                       uint64_t* first_fail_seed);
ss_status ss_worstcase_sweep(int n_min, int n_max, const char* active, double eps,
                             const char* format, char** out);
ss_status ss_explore(const char* dims, const char* kind, double eps, int trials, uint64_t seed,
                     int threads, const char* format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SIMSMOOTH_CAPI_H */
