/* Copyright 2026 The qmeas developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * qmeas: construction, classification, dilation, and simulation of discrete
 * quantum measurements on finite-dimensional state spaces.
 *
 * Conventions used throughout this API:
 *
 *  - Complex data crosses the boundary as interleaved doubles
 *    [re0, im0, re1, im1, ...]; matrices are row-major.
 *  - Composite system (x) apparatus indices put the system on the slow
 *    (major) axis: (a, c) -> a * apparatus_dim + c.
 *  - Functions returning a handle yield NULL on failure; functions returning
 *    int yield QMEAS_OK or an QMEAS_ERR_* code. Either way the thread-local
 *    qmeas_last_error_code() / qmeas_last_error_message() describe the
 *    failure until the next qmeas call on the same thread.
 *  - Every `tol` parameter accepts a value <= 0 to request the default
 *    tolerance (1e-9, Frobenius norm).
 *  - Handles are immutable once created and may be shared across threads;
 *    each handle must be released exactly once with its matching _free.
 */

#ifndef QMEAS_H
#define QMEAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define QMEAS_OK 0
#define QMEAS_ERR_INVALID_ARGUMENT 1
#define QMEAS_ERR_NOT_HERMITIAN 2
#define QMEAS_ERR_NOT_POSITIVE 3
#define QMEAS_ERR_NOT_UNITARY 4
#define QMEAS_ERR_NOT_ORTHONORMAL 5
#define QMEAS_ERR_DIMENSION_MISMATCH 6
#define QMEAS_ERR_VALIDATION 7
#define QMEAS_ERR_ZERO_PROBABILITY 8
#define QMEAS_ERR_INDEX_OUT_OF_RANGE 9
#define QMEAS_ERR_INVALID_DECOMPOSITION 10
#define QMEAS_ERR_COMPLETENESS 11
#define QMEAS_ERR_CONSISTENCY 12
#define QMEAS_ERR_NOT_SINGULAR 13
#define QMEAS_ERR_NOT_LOCALLY_NONTRIVIAL 14
#define QMEAS_ERR_IO 15
#define QMEAS_ERR_ALLOC 16
#define QMEAS_ERR_INTERNAL 17

typedef struct qmeas_matrix qmeas_matrix;
typedef struct qmeas_observable qmeas_observable;
typedef struct qmeas_povm qmeas_povm;
typedef struct qmeas_instrument qmeas_instrument;
typedef struct qmeas_classification qmeas_classification;
typedef struct qmeas_dilation qmeas_dilation;

/* ------------------------------------------------------------------ */
/* Library information and error reporting                            */

const char* qmeas_version(void);

/* Status of the most recent qmeas call on this thread. */
int qmeas_last_error_code(void);
const char* qmeas_last_error_message(void);

/* ------------------------------------------------------------------ */
/* Matrices                                                           */

/* `interleaved` holds 2*rows*cols doubles, row-major. */
qmeas_matrix* qmeas_matrix_create(int64_t rows, int64_t cols,
                                  const double* interleaved);
qmeas_matrix* qmeas_matrix_identity(int64_t dim);
qmeas_matrix* qmeas_matrix_clone(const qmeas_matrix* m);
void qmeas_matrix_free(qmeas_matrix* m);

int qmeas_matrix_rows(const qmeas_matrix* m, int64_t* out);
int qmeas_matrix_cols(const qmeas_matrix* m, int64_t* out);
/* `out` must hold 2*rows*cols doubles. */
int qmeas_matrix_entries(const qmeas_matrix* m, double* out);

qmeas_matrix* qmeas_matrix_multiply(const qmeas_matrix* a,
                                    const qmeas_matrix* b);
qmeas_matrix* qmeas_matrix_adjoint(const qmeas_matrix* m);
qmeas_matrix* qmeas_matrix_subtract(const qmeas_matrix* a,
                                    const qmeas_matrix* b);
qmeas_matrix* qmeas_matrix_tensor(const qmeas_matrix* a,
                                  const qmeas_matrix* b);
qmeas_matrix* qmeas_matrix_partial_trace_2(const qmeas_matrix* m, int64_t d1,
                                           int64_t d2);
/* Frobenius norm of a - b. */
int qmeas_matrix_distance(const qmeas_matrix* a, const qmeas_matrix* b,
                          double* out);
int qmeas_matrix_trace(const qmeas_matrix* m, double* out_re, double* out_im);

qmeas_matrix* qmeas_matrix_positive_sqrt(const qmeas_matrix* m, double tol);

/*
 * Polar factorization m = U H: H is the positive square root of
 * m^dagger m, `partial_isometry` the uniquely determined factor supported on
 * the range of H, `range_projector` the projector onto that range, and
 * `unitary` the deterministic unitary extension. Any subset of the output
 * pointers may be NULL to skip that factor.
 */
int qmeas_polar(const qmeas_matrix* m, double tol, qmeas_matrix** unitary,
                qmeas_matrix** positive, qmeas_matrix** partial_isometry,
                qmeas_matrix** range_projector);

/* ------------------------------------------------------------------ */
/* Observables                                                        */

/*
 * Spectral form: `eigenvalues` holds `outcome_count` pairwise distinct
 * reals, `projectors` the matching orthogonal projectors summing to the
 * identity.
 */
qmeas_observable* qmeas_observable_create(size_t outcome_count,
                                          const double* eigenvalues,
                                          const qmeas_matrix* const* projectors,
                                          double tol);
/* Eigendecomposition of a Hermitian matrix; raw eigenvalues closer than
 * `group_tol` merge into one degenerate outcome (group_tol < 0 requests the
 * automatic choice 1e-8 * max(1, largest |eigenvalue|)). */
qmeas_observable* qmeas_observable_from_matrix(const qmeas_matrix* m,
                                               double group_tol, double tol);
/* Nondegenerate observable whose rank-1 projectors split each eigenspace. */
qmeas_observable* qmeas_observable_refine(const qmeas_observable* obs,
                                          double tol);
void qmeas_observable_free(qmeas_observable* obs);

int qmeas_observable_dim(const qmeas_observable* obs, int64_t* out);
int qmeas_observable_outcome_count(const qmeas_observable* obs, size_t* out);
int qmeas_observable_eigenvalue(const qmeas_observable* obs, size_t index,
                                double* out);
qmeas_matrix* qmeas_observable_projector(const qmeas_observable* obs,
                                         size_t index);

/* ------------------------------------------------------------------ */
/* POVMs                                                              */

/* `labels` may be NULL for index labels "0", "1", ... */
qmeas_povm* qmeas_povm_create(size_t outcome_count,
                              const qmeas_matrix* const* effects,
                              const char* const* labels, double tol);
void qmeas_povm_free(qmeas_povm* povm);

int qmeas_povm_dim(const qmeas_povm* povm, int64_t* out);
int qmeas_povm_outcome_count(const qmeas_povm* povm, size_t* out);
qmeas_matrix* qmeas_povm_effect(const qmeas_povm* povm, size_t index);
/* Returned pointer stays owned by the handle. */
const char* qmeas_povm_label(const qmeas_povm* povm, size_t index);

/* ------------------------------------------------------------------ */
/* Instruments                                                        */

/* `labels` may be NULL for index labels "0", "1", ... */
qmeas_instrument* qmeas_instrument_create(
    size_t outcome_count, const qmeas_matrix* const* transformers,
    const char* const* labels, double tol);
/* Transformers = the eigenprojectors of `obs`. */
qmeas_instrument* qmeas_instrument_luders(const qmeas_observable* obs);
/* M_i = U_i sqrt(Pi_i); `unitaries` may be NULL for all-identity. */
qmeas_instrument* qmeas_instrument_from_povm(
    const qmeas_povm* povm, const qmeas_matrix* const* unitaries, double tol);
/* Named reference instruments; see qmeas_preset_names. */
qmeas_instrument* qmeas_instrument_preset(const char* name, double tol);
/* Newline-separated list of preset names; owned by the library. */
const char* qmeas_preset_names(void);
void qmeas_instrument_free(qmeas_instrument* inst);

int qmeas_instrument_dim(const qmeas_instrument* inst, int64_t* out);
int qmeas_instrument_outcome_count(const qmeas_instrument* inst, size_t* out);
qmeas_matrix* qmeas_instrument_transformer(const qmeas_instrument* inst,
                                           size_t index);
/* Returned pointer stays owned by the handle. */
const char* qmeas_instrument_label(const qmeas_instrument* inst, size_t index);
/* The measure Pi_i = M_i^dagger M_i. */
qmeas_povm* qmeas_instrument_povm(const qmeas_instrument* inst, double tol);

/* ------------------------------------------------------------------ */
/* Measurement                                                        */

/* Density operator |psi><psi| of a normalized amplitude vector. */
qmeas_matrix* qmeas_density_from_state(int64_t dim,
                                       const double* interleaved_amplitudes,
                                       double tol);

/* Born probabilities; `out` must hold outcome_count doubles. */
int qmeas_probabilities(const qmeas_instrument* inst, const qmeas_matrix* rho,
                        double tol, double* out);
/* Conditioned post-measurement state; the outcome probability lands in
 * `out_probability` when non-NULL. */
qmeas_matrix* qmeas_apply_selective(const qmeas_instrument* inst, size_t index,
                                    const qmeas_matrix* rho, double tol,
                                    double* out_probability);
qmeas_matrix* qmeas_apply_nonselective(const qmeas_instrument* inst,
                                       const qmeas_matrix* rho, double tol);
/*
 * Outcome tallies over `shots` draws from one deterministic generator
 * (std::mt19937_64 seeded with `seed`; each draw maps one 64-bit word w to
 * u = (w >> 11) * 2^-53 and inverts the cumulative distribution in label
 * order). `out_counts` must hold outcome_count values.
 */
int qmeas_sample_counts(const qmeas_instrument* inst, const qmeas_matrix* rho,
                        uint64_t seed, uint64_t shots, double tol,
                        uint64_t* out_counts);
/* *out = 1 iff Tr(rho P_index) >= 1 - tol. */
int qmeas_has_sharp_value(const qmeas_matrix* rho,
                          const qmeas_observable* obs, size_t index,
                          double tol, int* out);
/*
 * Verifies on one convex decomposition rho = sum_k w_k |k><k| that a sharp
 * value of rho is inherited by every component. `states_interleaved` holds
 * `count` amplitude vectors back to back (2*dim doubles each).
 */
int qmeas_sharp_decomposition_check(const qmeas_matrix* rho,
                                    const qmeas_observable* obs, size_t index,
                                    size_t count, const double* weights,
                                    const double* states_interleaved,
                                    double tol, int* out);

/* ------------------------------------------------------------------ */
/* Classification                                                     */

typedef struct qmeas_outcome_report {
  int is_ordinary;           /* induced effect is a projector */
  int borderline;            /* deciding residual within 10x of tolerance */
  int has_repeatable;        /* repeatability defined (outcome ordinary) */
  int is_repeatable;         /* meaningful only when has_repeatable */
  int64_t projector_rank;    /* rank of the measured event; -1 if none */
  double projector_residual; /* ||H^2 - H|| for the positive polar factor */
  double repeatable_residual; /* ||M - P M||; 0 when not ordinary */
  double ideal_distance;     /* ||M - P||; 0 when not ordinary */
} qmeas_outcome_report;

qmeas_classification* qmeas_classify(const qmeas_instrument* inst, double tol);
void qmeas_classification_free(qmeas_classification* cls);

/* One of IdealOrdinary, RepeatableOrdinary, NonrepeatableOrdinary,
 * MixedRepeatability, Generalized; owned by the handle. */
const char* qmeas_classification_kind(const qmeas_classification* cls);
int qmeas_classification_outcome_count(const qmeas_classification* cls,
                                       size_t* out);
int qmeas_classification_outcome(const qmeas_classification* cls, size_t index,
                                 qmeas_outcome_report* out);
/* The measured event of an ordinary outcome; fails for generalized ones. */
qmeas_matrix* qmeas_classification_projector(const qmeas_classification* cls,
                                             size_t index);
/* Whether the outcome projectors resolve the identity, and the residual
 * ||sum P_i - 1|| (meaningful only when all outcomes are ordinary). */
int qmeas_classification_projectors_complete(const qmeas_classification* cls,
                                             int* out_complete,
                                             double* out_residual);

/* Classification of a single transformer, without an instrument. */
int qmeas_classify_single(const qmeas_matrix* m, double tol,
                          qmeas_outcome_report* out);

/*
 * For a transformer whose positive polar factor is singular: returns the
 * range projector of M^dagger M followed by strictly larger projectors
 * (ending with the identity), all satisfying M E = M. The array and its
 * entries are released with qmeas_matrix_list_free. Fails with
 * QMEAS_ERR_NOT_SINGULAR for full-rank transformers.
 */
int qmeas_remark_projectors(const qmeas_matrix* m, double tol,
                            qmeas_matrix*** out_list, size_t* out_count);
void qmeas_matrix_list_free(qmeas_matrix** list, size_t count);

/* ------------------------------------------------------------------ */
/* Dilation                                                           */

/* Composite-unitary realization of an instrument on an apparatus whose
 * dimension equals the outcome count. */
qmeas_dilation* qmeas_dilate(const qmeas_instrument* inst, double tol);
/*
 * Assembles a model from parts: `ready` holds 2*apparatus_dim doubles,
 * `pointer_basis` apparatus_dim vectors back to back, `pointer_values`
 * apparatus_dim distinct reals, `unitary` acts on
 * system_dim * apparatus_dim.
 */
qmeas_dilation* qmeas_dilation_create(int64_t system_dim,
                                      int64_t apparatus_dim,
                                      const double* ready,
                                      const double* pointer_basis,
                                      const double* pointer_values,
                                      const qmeas_matrix* unitary, double tol);
void qmeas_dilation_free(qmeas_dilation* model);

int qmeas_dilation_system_dim(const qmeas_dilation* model, int64_t* out);
int qmeas_dilation_apparatus_dim(const qmeas_dilation* model, int64_t* out);
qmeas_matrix* qmeas_dilation_unitary(const qmeas_dilation* model);
/* `out` must hold 2*apparatus_dim doubles. */
int qmeas_dilation_ready_state(const qmeas_dilation* model, double* out);
int qmeas_dilation_pointer_vector(const qmeas_dilation* model, size_t index,
                                  double* out);
int qmeas_dilation_pointer_value(const qmeas_dilation* model, size_t index,
                                 double* out);

/* Reads the state transformers back out of the model. */
qmeas_instrument* qmeas_dilation_extract(const qmeas_dilation* model,
                                         double tol);
/* U (psi (x) ready); `out` must hold 2*system_dim*apparatus_dim doubles. */
int qmeas_dilation_final_state(const qmeas_dilation* model,
                               const double* psi_interleaved, double tol,
                               double* out);
/* Pointer reading: probability plus the conditioned system factor
 * (`out_system` holds 2*system_dim doubles). */
int qmeas_dilation_read_pointer(const qmeas_dilation* model,
                                const double* composite_interleaved,
                                size_t outcome_index, double tol,
                                double* out_probability, double* out_system);

#ifdef __cplusplus
}
#endif

#endif /* QMEAS_H */
