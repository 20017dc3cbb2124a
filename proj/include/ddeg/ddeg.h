#ifndef DDEG_DDEG_H
#define DDEG_DDEG_H

/* C interface to the dynamical degree engine. All handles are opaque; every call
 * returns a status code, and the text of the most recent failure on the calling
 * thread is available from ddeg_last_error(). Strings returned by the library stay
 * valid until the owning handle is freed. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ddeg_status {
  DDEG_OK = 0,
  DDEG_INEXACT = 2,   /* evidence-based value, bracket, or unverified realization */
  DDEG_EINPUT = 3,    /* parse error or malformed input */
  DDEG_ERESOURCE = 4, /* term, matrix or size budget exhausted */
  DDEG_EDOMAIN = 5,   /* well-formed input outside the domain, e.g. a non-dominant map */
  DDEG_EINTERNAL = 6,
  DDEG_EARG = 7 /* null handle or invalid argument */
} ddeg_status;

typedef struct ddeg_config ddeg_config;
typedef struct ddeg_result ddeg_result;
typedef struct ddeg_endo ddeg_endo;

const char* ddeg_version(void);
const char* ddeg_status_name(ddeg_status s);
const char* ddeg_last_error(void);

/* Configuration keys: precision_bits, digits, oracle_depth, horizon (0 = 2n+4),
 * budget_terms, budget_matrices, tolerance, handelman_cap (0 = 2*deg+4). */
ddeg_config* ddeg_config_new(void);
void ddeg_config_free(ddeg_config* cfg);
ddeg_status ddeg_config_set(ddeg_config* cfg, const char* key, const char* value);
/* Writes the value as JSON text; fails with DDEG_EARG when buf is too small. */
ddeg_status ddeg_config_get(const ddeg_config* cfg, const char* key, char* buf, size_t len);

/* Jobs. On success and on failures past argument checking, *out receives a result
 * holding either the job's records or an error record; free it with ddeg_result_free. */
ddeg_status ddeg_compute(const ddeg_config* cfg, const char* endomorphism, ddeg_result** out);
ddeg_status ddeg_enumerate(const ddeg_config* cfg, const char* kind, int degree, ddeg_result** out);
ddeg_status ddeg_classify(const ddeg_config* cfg, const char* polynomial, const char* root, ddeg_result** out);
/* matrix may be NULL; otherwise written as [[a,b],[c,d]] */
ddeg_status ddeg_realize(const ddeg_config* cfg, const char* polynomial, const char* root, const char* matrix,
                         ddeg_result** out);
ddeg_status ddeg_examplerst(const ddeg_config* cfg, long r, long s, long t, ddeg_result** out);
ddeg_status ddeg_oracle(const ddeg_config* cfg, const char* endomorphism, unsigned depth, ddeg_result** out);

const char* ddeg_result_records(const ddeg_result* res); /* JSON lines, schema "ddeg/1" */
const char* ddeg_result_table(const ddeg_result* res);
int ddeg_result_exit_code(const ddeg_result* res); /* 0 exact, 2 inexact, 3 input, 4 resource, 1 internal */
void ddeg_result_free(ddeg_result* res);

/* Endomorphisms */
ddeg_status ddeg_endo_parse(const char* text, ddeg_endo** out);
void ddeg_endo_free(ddeg_endo* f);
const char* ddeg_endo_str(const ddeg_endo* f);
size_t ddeg_endo_arity(const ddeg_endo* f);
long long ddeg_endo_degree(const ddeg_endo* f); /* -1 for the zero map */
ddeg_status ddeg_endo_compose(const ddeg_endo* outer, const ddeg_endo* inner, ddeg_endo** out);
ddeg_status ddeg_endo_iterate(const ddeg_endo* f, unsigned r, ddeg_endo** out);
int ddeg_endo_equal(const ddeg_endo* a, const ddeg_endo* b);

#ifdef __cplusplus
}
#endif

#endif
