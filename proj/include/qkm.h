#ifndef QKM_H
#define QKM_H

/* C interface to the qkm exact computer-algebra core.
 *
 * The library verifies, by exact symbolic computation, the defining
 * relations of the level-one vertex-operator realization attached to a
 * symmetric generalized Cartan matrix, plus a family of standalone
 * symmetric-function identities (Hall-Littlewood expansion, q-binomial
 * and q-difference lemmas).
 *
 * Conventions:
 *   - Every function that can fail returns a qkm_status.  On any status
 *     other than QKM_OK the out-parameters are left untouched and a
 *     human-readable message is available from qkm_last_error() until the
 *     next qkm_* call on the same thread.
 *   - Strings returned through char** out-parameters are heap-allocated;
 *     release them with qkm_string_free().
 *   - Objects returned through qkm_cartan** / qkm_report** must be released
 *     with the matching *_destroy() function.
 *   - All functions are thread-safe as long as each qkm_cartan / qkm_report
 *     instance is used by one thread at a time.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qkm_status {
  QKM_OK = 0,           /* success */
  QKM_ERR_INVALID = 1,  /* malformed input or bad argument */
  QKM_ERR_COST = 2,     /* request exceeds a built-in cost guard */
  QKM_ERR_INTERNAL = 3  /* unexpected failure inside the library */
} qkm_status;

/* Opaque handle for a validated symmetric generalized Cartan matrix. */
typedef struct qkm_cartan qkm_cartan;

/* Opaque handle for the result of a verification run. */
typedef struct qkm_report qkm_report;

/* ---- Cartan matrices ------------------------------------------------- */

/* Creates a Cartan handle from `rank * rank` entries in row-major order.
 * The matrix must be symmetric with diagonal 2 and nonpositive integers off
 * the diagonal (QKM_ERR_INVALID otherwise).  Rank is limited to 16
 * (QKM_ERR_COST beyond that). */
qkm_status qkm_cartan_create(const int* entries, int rank, qkm_cartan** out);

/* Same, from a JSON document of the form
 *   { "rank": 2, "matrix": [[2, -1], [-1, 2]] }
 * The "rank" member is optional; when present it must match the matrix
 * dimensions. */
qkm_status qkm_cartan_from_json(const char* json_text, qkm_cartan** out);

/* Rank of the matrix, or -1 if `cartan` is NULL. */
int qkm_cartan_rank(const qkm_cartan* cartan);

void qkm_cartan_destroy(qkm_cartan* cartan);

/* ---- Relation verification suite ------------------------------------- */

/* Runs the relation suite on the finite-dimensional truncation determined by
 * the scale parameters and writes a report handle to *out.
 *
 *   degree_cap    highest Heisenberg weight enumerated (>= 0)
 *   lattice_box   sup-norm radius of the lattice window (>= 0)
 *   mode_range    operator mode indices run over [-mode_range, mode_range]
 *   relations_csv comma-separated subset of
 *                   OPE,R2,R4,R5,R6,R7,R8,SERRE,T3
 *                 (case-insensitive; NULL or "" selects all of them)
 *   workers       worker threads (>= 1); results are identical for any count
 *   include_identities
 *                 nonzero also runs the standalone identity fragments
 *                 (SER2, SER3, BINOM, DIFF) at their default sizes
 *   mutate_flip_half_power
 *                 nonzero flips the sign of the half-power normalization
 *                 inside the vertex operators; the suite is expected to
 *                 FAIL under this mutation (soundness probe)
 *
 * A report is produced even when relations fail; query qkm_report_all_pass.
 * QKM_ERR_COST is returned when a fragment refuses the requested size. */
qkm_status qkm_suite_run(const qkm_cartan* cartan,
                         int degree_cap,
                         int lattice_box,
                         int mode_range,
                         const char* relations_csv,
                         int workers,
                         int include_identities,
                         int mutate_flip_half_power,
                         qkm_report** out);

/* 1 if every fragment passed, 0 otherwise (or if `report` is NULL). */
int qkm_report_all_pass(const qkm_report* report);

/* Serializes the report as pretty-printed JSON / as plain text. */
qkm_status qkm_report_json(const qkm_report* report, char** out);
qkm_status qkm_report_text(const qkm_report* report, char** out);

void qkm_report_destroy(qkm_report* report);

/* ---- Standalone identity checks --------------------------------------- */

/* Verifies one named identity family at size `n`:
 *   "ser2"        symmetrized kernel identity, on n variables (1 <= n <= 6)
 *   "ser3"        bar-variant over the shifted Vandermonde (1 <= n <= 6)
 *   "serre-coeff" constant-term factorization of the kernel (1 <= n <= 64)
 *   "binom"       q-binomial theorem + vanishing evaluation, orders 1..n
 *                 (1 <= n <= 64)
 *   "diff"        q-difference lemmas up to order n (1 <= n <= 12)
 * Writes 1/0 to *holds.  When `message` is non-NULL, *message receives a
 * short summary (a witness term on failure).  Sizes above the listed bounds
 * return QKM_ERR_COST; unknown names return QKM_ERR_INVALID. */
qkm_status qkm_identity_check(const char* name, int n, int* holds,
                              char** message);

/* ---- Hall-Littlewood polynomials -------------------------------------- */

/* Canonical text form of the Hall-Littlewood polynomial P_lambda in
 * `num_vars` variables, lambda given as a comma-separated partition such as
 * "2,1" ("" or "0" for the empty partition).  num_vars is limited to 8 and
 * |lambda| + num_vars weight to 24 by a cost guard. */
qkm_status qkm_hl_poly_text(const char* lambda_csv, int num_vars, char** out);

/* Expands a symmetric polynomial with nonnegative exponents in the
 * Hall-Littlewood basis.  Input JSON:
 *   { "vars": 2,
 *     "terms": [ { "exp": [2, 0], "coeff": [[0, "1"]] },
 *                { "exp": [1, 1], "coeff": [[0, "1"], [4, "-3/2"]] } ] }
 * Each "exp" lists the exponents of one monomial (length == vars; the
 * polynomial must contain every permutation of it with equal coefficient);
 * "coeff" lists [half_exponent, rational] pairs meaning
 * sum_k rational_k * q^(half_exponent_k / 2).  Output: one line per
 * partition, "lambda: coefficient", most dominant first; "0" for the zero
 * polynomial.  Same cost limits as qkm_hl_poly_text. */
qkm_status qkm_hl_expand_text(const char* terms_json, char** out);

/* ---- Errors and memory ------------------------------------------------ */

/* Message for the most recent failing qkm_* call on this thread ("" if the
 * most recent call succeeded).  The pointer is valid until the next qkm_*
 * call on the same thread; do not free it. */
const char* qkm_last_error(void);

/* Releases a string obtained from any char** out-parameter.  NULL is ok. */
void qkm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* QKM_H */
