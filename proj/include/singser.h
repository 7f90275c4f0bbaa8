/* Public C interface to the singular-series library.
 *
 * Every entry point returns a singser_status; results come back through
 * out-parameters.  On failure the out-parameters are left untouched and a
 * thread-local message is available from singser_last_error().  Strings
 * returned by the report getters stay valid until the report is freed.
 */
#ifndef SINGSER_H
#define SINGSER_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum singser_status {
  SINGSER_OK = 0,
  SINGSER_EDOMAIN = 1,   /* invalid mathematical input */
  SINGSER_ECAPACITY = 2, /* configured resource bound exceeded */
  SINGSER_ETOL = 3,      /* numerical target accuracy not reached */
  SINGSER_EINVAL = 4     /* malformed call: null pointer, bad JSON, ... */
} singser_status;

/* Opaque verification report produced by singser_run_suite. */
typedef struct singser_report singser_report;

const char* singser_version(void);

/* Message describing the calling thread's most recent failure; empty
 * string after a success. */
const char* singser_last_error(void);

size_t singser_suite_count(void);
/* Name of suite i in declaration order, NULL when i is out of range. */
const char* singser_suite_name(size_t i);

/* --- scalar evaluations ------------------------------------------------ */

/* Singular series of the k distinct offsets with Euler factors at primes
 * dividing r removed, truncated at prime_limit.  tail may be NULL. */
singser_status singser_singular_series(const int64_t* offsets, size_t k,
                                       int64_t r, uint64_t prime_limit,
                                       double* value, double* tail);

/* Centered (inclusion-exclusion) variant of the above, k <= 20. */
singser_status singser_singular_series_zero(const int64_t* offsets, size_t k,
                                            int64_t r, uint64_t prime_limit,
                                            double* value, double* tail);

/* Two-element closed form at nonzero separation m. */
singser_status singser_two_term(int64_t m, int64_t r, uint64_t prime_limit,
                                double* value, double* tail);

/* Constant term of the pair main term in residue classes mod r. */
singser_status singser_c0(int64_t r, double* value);

/* Pair correlation main term at window length h, modulus r. */
singser_status singser_pair_main_term(int64_t h, int64_t r, double* value);

/* k-th moment ratio against the Poisson reference. */
singser_status singser_gallagher_ratio(int64_t h, int k, uint64_t prime_limit,
                                       double* value);

/* Closed form of V_2 for classes c1, c2 mod r at window length h.
 * terms[0..5] receive quadratic, mertens, log, constant, character (real
 * part), and total. */
singser_status singser_v2_closed(int64_t h, int64_t r, int64_t c1, int64_t c2,
                                 double terms[6]);

/* --- verification suites ------------------------------------------------ */

/* Runs the suite described by a JSON object, e.g.
 *   {"suite": "two-term", "h": [512, 1024, 2048, 4096], "r": 4}
 * Recognized keys: suite (required), h, r, q, k, classes, prime_limit,
 * threads.  h is either an array of window lengths or a string "a..b"
 * restricting the suite's default grid to [a, b].  Unknown keys are
 * rejected.  On success *out owns a report that must be released with
 * singser_report_free. */
singser_status singser_run_suite(const char* config_json, singser_report** out);

/* 1 when the suite's pass rule held, else 0. */
int singser_report_pass(const singser_report* rep);
/* 1 when the suite flagged a soft finding (report-only suites). */
int singser_report_warn(const singser_report* rep);
const char* singser_report_json(const singser_report* rep);
const char* singser_report_csv(const singser_report* rep);
void singser_report_free(singser_report* rep);

#ifdef __cplusplus
}
#endif

#endif /* SINGSER_H */
