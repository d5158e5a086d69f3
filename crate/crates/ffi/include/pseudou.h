#ifndef PSEUDOU_H
#define PSEUDOU_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PseudouStatus {
  PSEUDOU_STATUS_OK = 0,
  PSEUDOU_STATUS_NULL_POINTER = 1,
  PSEUDOU_STATUS_INPUT_ERROR = 2,
  PSEUDOU_STATUS_CONSISTENCY_ERROR = 3,
  PSEUDOU_STATUS_PANIC = 4,
} PseudouStatus;

// Result of a commutator decomposition.
typedef struct PseudouCommutators PseudouCommutators;

// Hermitian form of signature `(m, n)`.
typedef struct PseudouForm PseudouForm;

// Square complex matrix.
typedef struct PseudouMatrix PseudouMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message on this thread, or null. Owned by the library; valid until the next failing call.
const char *pseudou_last_error(void);

void pseudou_string_free(char *s);

// `entries` holds `2 * dim * dim` doubles, row major, real and imaginary parts interleaved.
enum PseudouStatus pseudou_matrix_new(size_t dim,
                                      const double *entries,
                                      struct PseudouMatrix **out);

void pseudou_matrix_free(struct PseudouMatrix *m);

size_t pseudou_matrix_dim(const struct PseudouMatrix *m);

// Copies the entries into `out` (`2 * dim * dim` doubles, layout as in [`pseudou_matrix_new`]).
enum PseudouStatus pseudou_matrix_entries(const struct PseudouMatrix *m, double *out);

enum PseudouStatus pseudou_form_standard(size_t m, size_t n, struct PseudouForm **out);

// Form from an invertible Hermitian matrix; the signature is read off its inertia.
enum PseudouStatus pseudou_form_from_matrix(const struct PseudouMatrix *h,
                                            double tol,
                                            struct PseudouForm **out);

void pseudou_form_free(struct PseudouForm *f);

// Writes `m` and `n` of the form.
enum PseudouStatus pseudou_form_signature(const struct PseudouForm *f, size_t *m, size_t *n);

// Phase in `[0, 1)`.
enum PseudouStatus pseudou_dgw_phase(const struct PseudouMatrix *g,
                                     const struct PseudouForm *h,
                                     double tol,
                                     double *out);

enum PseudouStatus pseudou_cocycle(const struct PseudouMatrix *g1,
                                   const struct PseudouMatrix *g2,
                                   const struct PseudouForm *h,
                                   double tol,
                                   double *out);

enum PseudouStatus pseudou_commutators(const struct PseudouMatrix *g,
                                       const struct PseudouForm *h,
                                       double tol,
                                       struct PseudouCommutators **out);

void pseudou_commutators_free(struct PseudouCommutators *c);

size_t pseudou_commutators_len(const struct PseudouCommutators *c);

double pseudou_commutators_residual(const struct PseudouCommutators *c);

// New handles for the `index`-th pair `(A, B)`; the product of all `A B A^-1 B^-1` is the input.
enum PseudouStatus pseudou_commutators_pair(const struct PseudouCommutators *c,
                                            size_t index,
                                            struct PseudouMatrix **a,
                                            struct PseudouMatrix **b);

enum PseudouStatus pseudou_theta(uint64_t p, uint64_t *out);

// `N(g, p)` as a decimal string.
enum PseudouStatus pseudou_verlinde(size_t g, uint64_t p, char **out);

// Signature record at `zeta = exp(pi i e / p)` as JSON.
enum PseudouStatus pseudou_signature_json(size_t g, uint64_t p, uint64_t exponent, char **out);

// First `terms` values of a builtin signature recurrence as a JSON array.
enum PseudouStatus pseudou_recurrence_json(uint64_t p, uint64_t exponent, size_t terms, char **out);

// Sign (+1 or -1) of the Squier form on `k` strands at `q`; fails if the form is singular or indefinite.
enum PseudouStatus pseudou_squier_sign(size_t k,
                                       double q_re,
                                       double q_im,
                                       double tol,
                                       int32_t *out);

// Runs the command line with `argc` arguments (without the program name).
// Standard input is empty; the output text is returned through `out`.
enum PseudouStatus pseudou_cli(size_t argc,
                               const char *const *argv,
                               const char *stdin_json,
                               char **out,
                               int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PSEUDOU_H */
