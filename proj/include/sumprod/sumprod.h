/* C interface to the sum-product toolkit: opaque handles, status codes,
 * UTF-8 strings. Every string returned through an out-parameter is
 * heap-allocated and must be released with sp_string_free. Handles are
 * released with their matching *_free call. All functions are
 * thread-safe; the error message buffer is thread-local. */

#ifndef SUMPROD_H
#define SUMPROD_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct sp_set sp_set;
typedef struct sp_report sp_report;

typedef enum sp_status {
    SP_OK = 0,
    SP_ERR_CHECK_FAILED = 1,    /* an exact invariant failed */
    SP_ERR_INPUT = 2,           /* malformed file, option string or config */
    SP_ERR_RESOURCE = 3,        /* a brute-force cap was exceeded */
    SP_ERR_DOMAIN = 4,          /* operation precondition violated */
    SP_ERR_INVALID_ARGUMENT = 5,/* null handle or bad enum string */
    SP_ERR_INTERNAL = 6
} sp_status;

const char* sp_version(void);

/* Message describing the most recent failure on this thread. */
const char* sp_last_error(void);

/* --- finite rational sets ------------------------------------------- */

/* Set files: one value per line, "p" or "p/q" with q > 0; '#' comments
 * and blank lines ignored; output is sorted canonical form. */
sp_status sp_set_parse_file(const char* path, sp_set** out);
sp_status sp_set_parse_text(const char* text, sp_set** out);
sp_status sp_set_write_file(const sp_set* set, const char* path);
sp_status sp_set_format(const sp_set* set, char** out_text);

size_t sp_set_size(const sp_set* set);
sp_status sp_set_element(const sp_set* set, size_t index, char** out_text);

/* op: "sum" | "diff" | "prod" | "quot" */
sp_status sp_set_combine(const sp_set* a, const sp_set* b, const char* op, sp_set** out);
sp_status sp_set_inverse(const sp_set* a, sp_set** out);
sp_status sp_set_dilate(const sp_set* a, const char* lambda, sp_set** out);
sp_status sp_set_popular_slice(const sp_set* a, const char* lambda, sp_set** out);

/* family_json, e.g.
 *   {"kind":"ap","n":8,"start":"1","step":"1"}
 *   {"kind":"gp","n":8,"start":"1","ratio":"2"}
 *   {"kind":"bw","S":4,"P":2}
 *   {"kind":"random","N":1000,"n":32,"seed":7}            */
sp_status sp_set_generate(const char* family_json, sp_set** out);

void sp_set_free(sp_set* set);

/* --- exact energies -------------------------------------------------- */

/* Sum over x of r(x)^moment for the (a, b, op) representation counts;
 * moment in 1..4; b may be NULL to reuse a. Result is a decimal string. */
sp_status sp_energy(const sp_set* a, const sp_set* b, const char* op, int moment,
                    char** out_value);

/* --- experiment reports ---------------------------------------------- */

/* options_json may be NULL; recognized keys:
 *   {"seed":0,"workers":1,"max_decompose":256,
 *    "caps":{"sigma":1728,"sols":6,"incidence":10000000}} */
sp_status sp_run_stats(const sp_set* a, const char* options_json, sp_report** out);
sp_status sp_run_verify(const sp_set* a, const char* options_json, sp_report** out);

/* mode: "main" | "partition" | "fourth" */
sp_status sp_run_decompose(const sp_set* a, const char* mode, const char* options_json,
                           sp_report** out);

/* config: "elekes" | "dstar" | "random"; the set is required for
 * elekes/dstar and ignored for random. options_json additionally
 * accepts {"tau":1,"trials":200}. */
sp_status sp_run_incidence(const char* config, const sp_set* a, const char* options_json,
                           sp_report** out);

/* sweep_json: {"family":"ap","sizes":[8,16,32],"seed":7,"workers":1,
 *              "max_decompose":256,"caps":{...}} */
sp_status sp_run_sweep(const char* sweep_json, sp_report** out);

/* 1 iff every exact check in the report passed. */
int sp_report_passed(const sp_report* report);

/* format: "json" | "csv" */
sp_status sp_report_render(const sp_report* report, const char* format, char** out_text);

void sp_report_free(sp_report* report);
void sp_string_free(char* text);

#ifdef __cplusplus
}
#endif

#endif /* SUMPROD_H */
