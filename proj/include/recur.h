#ifndef RECUR_H
#define RECUR_H

/* C interface to the recurrence library.
 *
 * Conventions:
 *   - Functions return a status code: RECUR_OK and the other non-negative
 *     codes are outcomes, negative codes are caller errors.
 *   - Handles returned through an out-parameter own their storage and must
 *     be released with the matching *_free function. On error the out
 *     pointer is set to null.
 *   - A null recur_tolerances pointer selects the library defaults
 *     (rel 1e-9, abs 1e-12, singular 1e-12).
 *   - Strings returned as const char* are static; do not free them.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
    RECUR_OK = 0,
    RECUR_NOT_FOUND = 1,  /* membership query: not in the forbidden set   */
    RECUR_SINGULAR = 2,   /* step hit a vanishing denominator             */
    RECUR_UNDEFINED = 3,  /* closed form / invariant undefined here       */
    RECUR_ERR_INVALID = -1,    /* bad argument (null, out of range, ...)  */
    RECUR_ERR_DOMAIN = -2,     /* input outside the operation's domain    */
    RECUR_ERR_PARSE = -3,      /* text did not parse                      */
    RECUR_ERR_EMPTY_GRID = -4, /* enumeration asked for with no grid      */
    RECUR_ERR_BUFFER = -5,     /* output buffer too small                 */
    RECUR_ERR_INTERNAL = -6
};

/* Equation selectors for the second-order families. */
enum {
    RECUR_EQ4 = 4,
    RECUR_EQ5 = 5,
    RECUR_EQ6 = 6,
    RECUR_EQ7 = 7,
    RECUR_EQ8 = 8,
    RECUR_EQ9 = 9
};

/* Forbidden-point kinds reported by recur_riccati_forbidden_point. */
enum {
    RECUR_FORBIDDEN_POINT = 0,
    RECUR_FORBIDDEN_WHOLE_PLANE = 1,
    RECUR_FORBIDDEN_EMPTY_SET = 2,
    RECUR_FORBIDDEN_NO_POINT = 3
};

typedef struct {
    double re;
    double im;
} recur_complex;

typedef struct {
    double rel;
    double abs;
    double singular;
} recur_tolerances;

typedef struct {
    recur_complex alpha;
    recur_complex beta;
    recur_complex A;
    recur_complex B;
} recur_riccati_params;

/* Closed-form vs. iterated-orbit comparison. -1 marks "none". */
typedef struct {
    double max_rel_error;
    long first_disagreement;
    long oracle_singular_at;
    long closed_form_singular_at;
} recur_report;

typedef struct {
    recur_complex z0;
    recur_complex zm1;
    const char* branch;
    long n; /* stepping from this pair dies exactly at step n */
} recur_forbidden_point2d;

typedef struct {
    int fixed_coord; /* 0: z0 is pinned, 1: zm1 is pinned */
    recur_complex value;
    const char* branch;
    long n;
} recur_forbidden_line;

typedef struct recur_riccati recur_riccati_t;
typedef struct recur_so recur_so_t;
typedef struct recur_points recur_points_t;

const char* recur_version(void);
const char* recur_status_message(int status);

/* ---- complex text grammar ------------------------------------------- */

/* Accepts "<re>", "<im>i" and "<re>+<im>i" / "<re>-<im>i". */
int recur_parse_complex(const char* text, recur_complex* out);

/* Shortest numerals that round-trip through parsing. *len is set to the
 * full length (excluding the terminator) even when the buffer is small. */
int recur_format_real(double value, char* buf, size_t cap, size_t* len);
int recur_format_complex(recur_complex value, char* buf, size_t cap, size_t* len);

/* ---- first-order rational maps --------------------------------------- */

int recur_riccati_classify(const recur_riccati_params* params,
                           const recur_tolerances* tol, recur_riccati_t** out);
void recur_riccati_free(recur_riccati_t* handle);

/* Case index 1..7, or 0 for a null handle. */
int recur_riccati_case(const recur_riccati_t* handle);
const char* recur_riccati_case_name_of(const recur_riccati_t* handle);

/* Derived constants; pointers may be null. Fields that do not apply to the
 * classified case are written as zero. */
int recur_riccati_constants(const recur_riccati_t* handle, recur_complex* R,
                            recur_complex* w_minus, recur_complex* w_plus,
                            double* R_real, double* phi);

int recur_riccati_step(const recur_riccati_t* handle, recur_complex x,
                       recur_complex* out);

/* RECUR_OK with *out, or RECUR_UNDEFINED with *undefined_at (when non-null)
 * set to the first undefined index. */
int recur_riccati_closed_form(const recur_riccati_t* handle, recur_complex x0,
                              long n, recur_complex* out, long* undefined_at);

int recur_riccati_forbidden_point(const recur_riccati_t* handle, long n,
                                  int* kind, recur_complex* value);

/* RECUR_OK with *n_out set, or RECUR_NOT_FOUND. */
int recur_riccati_forbidden_contains(const recur_riccati_t* handle,
                                     recur_complex x0, long max_n, long* n_out);

int recur_verify_riccati(const recur_riccati_t* handle, recur_complex x0,
                         long n_max, const recur_tolerances* tol,
                         recur_report* out);

/* ---- second-order families ------------------------------------------- */

int recur_parse_equation(const char* name); /* "eq4".."eq9" -> 4..9, else -1 */
const char* recur_equation_name_of(int eq);

int recur_so_subcase_count(int eq);
const char* recur_so_subcase_at(int eq, int i);

int recur_so_classify(int eq, recur_complex B, recur_complex z0,
                      recur_complex zm1, const recur_tolerances* tol,
                      recur_so_t** out);
void recur_so_free(recur_so_t* handle);

const char* recur_so_subcase(const recur_so_t* handle);

/* Derived constants; pointers may be null, inapplicable fields are zero. */
int recur_so_constants(const recur_so_t* handle, recur_complex* C,
                       recur_complex* lambda1, recur_complex* lambda2,
                       recur_complex* M1, recur_complex* M2, recur_complex* w0,
                       recur_complex* D, double* rho);

/* Stateless single step z_{n+1} = f(z_n, z_{n-1}); no handle needed. */
int recur_so_step_eval(int eq, recur_complex B, recur_complex zn,
                       recur_complex znm1, const recur_tolerances* tol,
                       recur_complex* out);

/* n >= -1; -1 and 0 return the initial data verbatim. */
int recur_so_closed_form(const recur_so_t* handle, long n, recur_complex* out,
                         long* undefined_at);

int recur_so_invariant(int eq, recur_complex B, recur_complex zn,
                       recur_complex znm1, recur_complex* out);

/* Max |I_n - I_0| over defined steps of the first n_max iterates. */
int recur_so_invariant_drift(int eq, recur_complex B, recur_complex z0,
                             recur_complex zm1, long n_max,
                             const recur_tolerances* tol, double* drift);

/* RECUR_OK with *branch / *n_out set, or RECUR_NOT_FOUND. */
int recur_so_forbidden_contains(int eq, recur_complex B, recur_complex z0,
                                recur_complex zm1, long max_n,
                                const recur_tolerances* tol,
                                const char** branch, long* n_out);

/* Enumerates forbidden pairs with per-branch index up to n_max. Countable
 * branches are always listed; branches parametrized by a constant or a free
 * coordinate are sampled on the given grids (either may be empty, not both). */
int recur_so_forbidden_sample(int eq, recur_complex B, long n_max,
                              const recur_complex* c_grid, size_t c_len,
                              const recur_complex* line_grid, size_t line_len,
                              recur_points_t** out);
void recur_points_free(recur_points_t* handle);

size_t recur_points_count(const recur_points_t* handle);
int recur_points_get(const recur_points_t* handle, size_t i,
                     recur_forbidden_point2d* out);
size_t recur_lines_count(const recur_points_t* handle);
int recur_lines_get(const recur_points_t* handle, size_t i,
                    recur_forbidden_line* out);

int recur_verify_so(const recur_so_t* handle, long n_max,
                    const recur_tolerances* tol, recur_report* out);

/* ---- Lyness maps ------------------------------------------------------ */

/* window holds x_{n-k}..x_n oldest first, length k+1. */
int recur_lyness_step(long k, recur_complex alpha, const recur_complex* window,
                      size_t len, const recur_tolerances* tol,
                      recur_complex* out);
int recur_lyness_invariant(long k, recur_complex alpha,
                           const recur_complex* window, size_t len,
                           recur_complex* out);

/* ---- seeded samplers --------------------------------------------------- */

/* riccati_case is 1..7. Draws an admissible instance away from case
 * boundaries and forbidden points; deterministic in (seed, index). */
int recur_sample_riccati(int riccati_case, uint64_t seed, long index,
                         recur_riccati_params* params, recur_complex* x0);

/* subcase is one of the names reported by recur_so_subcase_at. */
int recur_sample_so(int eq, const char* subcase, uint64_t seed, long index,
                    recur_complex* B, recur_complex* z0, recur_complex* zm1);

/* Draw rejected only when the invariant is undefined or an early
 * denominator is near zero; subcase unconstrained. */
int recur_sample_so_generic(int eq, uint64_t seed, long index, recur_complex* B,
                            recur_complex* z0, recur_complex* zm1);

/* Fills out[0..k] with a positive real window; cap must be >= k+1. */
int recur_sample_lyness(long k, uint64_t seed, long index, double* out,
                        size_t cap, size_t* len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RECUR_H */
