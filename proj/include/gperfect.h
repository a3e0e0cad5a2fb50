/* gperfect - generalized perfect number toolkit, C API.
 *
 * Every function returns a gp_status; results come back through out
 * parameters. Strings returned through char** are heap-allocated and must be
 * released with gp_string_free(). Big integers cross the boundary as decimal
 * strings, structured results as JSON text. Handles are opaque and
 * single-owner; they are not thread-safe individually, but independent
 * handles may be used from different threads.
 */
#ifndef GPERFECT_H
#define GPERFECT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gp_status {
    GP_OK = 0,
    GP_ERR_USAGE = 1,            /* unparseable input or bad argument */
    GP_ERR_DOMAIN = 2,           /* precondition violated (n = 0, even n, ...) */
    GP_ERR_IO = 3,               /* file could not be read or written */
    GP_ERR_CHECKPOINT_STALE = 4, /* checkpoint belongs to a different job */
    GP_ERR_CHECKPOINT_BAD = 5,   /* checkpoint missing or corrupt on resume */
    GP_ERR_CANCELLED = 6,        /* a callback stopped the run */
    GP_ERR_INTERNAL = 7
} gp_status;

const char* gp_version(void);
const char* gp_status_message(gp_status status);
/* Detail of the most recent failure on this thread; empty string if none. */
const char* gp_last_error(void);
void gp_string_free(char* s);

/* ---- exact arithmetic -------------------------------------------------- */

/* sigma(n): sum of all positive divisors. n must be >= 1. */
gp_status gp_sigma(const char* n_dec, char** out_dec);

/* Prime factorization as JSON [["p","e"], ...]; "1" yields []. */
gp_status gp_factorize(const char* n_dec, char** out_json);

/* Exact base^exponent; 0^0 = 1. */
gp_status gp_pow(const char* base_dec, uint64_t exponent, char** out_dec);

/* Exact decimal digit count; 0 counts as 1 digit. */
gp_status gp_digit_count(const char* n_dec, uint64_t* out);

/* ---- primality --------------------------------------------------------- */

/* Certificate JSON {subject, verdict, method, detail?}. Deterministic below
 * 2^64 (trial division / fixed-base Miller-Rabin); BPSW probable-prime
 * verdicts above. */
gp_status gp_is_prime(const char* n_dec, char** out_cert_json);

/* Lucas-Lehmer test of 2^p - 1; p itself must be prime. */
gp_status gp_lucas_lehmer(uint64_t p, char** out_cert_json);

/* ---- classification ---------------------------------------------------- */

/* All satisfied classes of n >= 1, with sigma(n), sigma(sigma(n)) and the
 * factorization:
 * {"n":..,"classes":[tag,...],"sigma_n":..,"sigma_sigma_n":..,
 *  "factorization":[["p","e"],...]}
 * Tags: perfect, superperfect, hyper(k), superhyper(k), v2(k), v3(k), v4, v5.
 */
gp_status gp_classify(const char* n_dec, uint64_t k_max, char** out_json);

/* ---- exhaustive range search ------------------------------------------- */

typedef struct gp_search gp_search;

/* One finding as JSON, streamed in ascending order as segments commit. */
typedef void (*gp_finding_fn)(const char* finding_json, void* user);

/* class_spec: comma-separated family[:k] entries, e.g. "hyper:2" or "v4". */
gp_status gp_search_new(const char* class_spec, const char* lo_dec,
                        const char* hi_dec, gp_search** out);
gp_status gp_search_set_workers(gp_search* s, unsigned workers);
gp_status gp_search_set_segment_length(gp_search* s, uint64_t length);
gp_status gp_search_set_checkpoint(gp_search* s, const char* path);

/* Runs to completion, resuming from the checkpoint file if one exists.
 * Findings are retained on the handle after the run. cb may be NULL. */
gp_status gp_search_run(gp_search* s, gp_finding_fn cb, void* user);

/* Like gp_search_run, but the checkpoint must already exist. */
gp_status gp_search_resume(gp_search* s, gp_finding_fn cb, void* user);

size_t gp_search_finding_count(const gp_search* s);
gp_status gp_search_finding_json(const gp_search* s, size_t index, char** out_json);
void gp_search_free(gp_search* s);

/* ---- structural form scans ---------------------------------------------- */

/* One hit as JSON {form, parameters, n, digits, certificates}. */
typedef void (*gp_scan_fn)(const char* hit_json, void* user);

/* form: "3k-2" (k with 3^k - 2 prime, hit n = 3^(k-1)(3^k - 2)),
 *       "prop2" (primes p with (3^p - 1)/2 prime, hit n = 3^(p-1)),
 *       "euclid" (primes p with 2^p - 1 prime, hit n = 2^(p-1)(2^p - 1)).
 * Hits arrive in ascending parameter order. out_jsonl (optional) receives
 * all hit lines concatenated. */
gp_status gp_scan(const char* form, uint64_t max_parameter,
                  gp_scan_fn cb, void* user, char** out_jsonl);

/* Candidate value of a parametric form with no primality requirement
 * (forms as above). */
gp_status gp_form_value(const char* form, uint64_t parameter, char** out_dec);

/* ---- sigma table dump ---------------------------------------------------- */

/* Sieves sigma over [lo, hi] and writes the SGT1 binary dump:
 * magic "SGT1", base offset and length as 8-byte little-endian unsigned,
 * then one little-endian 8-byte sigma value per slot. */
gp_status gp_sieve_dump(uint64_t lo, uint64_t hi, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* GPERFECT_H */
