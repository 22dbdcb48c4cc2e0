/* C interface to the exact holonomic q-difference kernel: context creation
 * for a root system with rational parameters, solving the coefficient
 * recursion, verification reports, and pointwise evaluation. */
#ifndef BQKZ_H
#define BQKZ_H

#ifdef __cplusplus
extern "C" {
#endif

#define BQKZ_OK 0
#define BQKZ_EINVAL 1    /* bad configuration or argument */
#define BQKZ_EDOMAIN 2   /* pole, resonance, or unreachable region */
#define BQKZ_EINTERNAL 3 /* unexpected failure */

typedef struct bqkz_ctx bqkz_ctx;

/* number of multiplicity classes for the system, or -1 if unsupported */
int bqkz_class_count(char type, int rank);

/* type in {'A'..'G'}; q and the k entries are rational strings like "1/4";
 * nk must equal bqkz_class_count(type, rank). On success *out owns the
 * context and must be released with bqkz_ctx_destroy. On failure *out may
 * still be non-NULL and carries the diagnostic (query bqkz_error_message,
 * then destroy). */
int bqkz_ctx_create(char type, int rank, const char* q, const char* const* k, int nk,
                    bqkz_ctx** out);
void bqkz_ctx_destroy(bqkz_ctx* ctx);

/* message for the most recent failing call on this context */
const char* bqkz_error_message(const bqkz_ctx* ctx);

/* solve the coefficient recursion up to the given total degree (>= 0) */
int bqkz_solve(bqkz_ctx* ctx, long degree);

/* exact coefficient table of the solved series as a JSON string; the caller
 * frees *json_out with bqkz_string_free */
int bqkz_psi_json(bqkz_ctx* ctx, char** json_out);

/* run the verification pipeline at the given truncation degree; *all_pass is
 * set to 1 iff every identity passed */
int bqkz_verify_json(bqkz_ctx* ctx, long degree, unsigned long seed, int samples,
                     int* all_pass, char** json_out);

/* evaluate the scalar solution at a rational point: t and g hold rank-many
 * rational coordinate strings; requires a prior bqkz_solve. *near_pole is set
 * to 1 when the point lies in the potential pole locus. */
int bqkz_eval_phiplus(bqkz_ctx* ctx, const char* const* t, const char* const* g, double* value,
                      double* bound, int* near_pole);

void bqkz_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BQKZ_H */
