#ifndef QES_H
#define QES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes. `QES_STATUS_OK` is zero; everything else is a failure.
 */
typedef enum QesStatus {
  QES_STATUS_OK = 0,
  QES_STATUS_INVALID_PARAMETER = 1,
  QES_STATUS_NEGATIVE_RADICAND = 2,
  QES_STATUS_OUT_OF_RANGE = 3,
  QES_STATUS_DEGENERATE_PARAMETERS = 4,
  QES_STATUS_SINGULARITY = 5,
  QES_STATUS_DOMAIN = 6,
  QES_STATUS_POLE = 7,
  QES_STATUS_GAMMA_POLE = 8,
  QES_STATUS_INCONSISTENT_COEFFICIENTS = 9,
  QES_STATUS_COMPLEX_POTENTIAL = 10,
  QES_STATUS_NOT_CONVERGED = 11,
  QES_STATUS_STEP_UNDERFLOW = 12,
  QES_STATUS_NON_NORMALIZABLE = 13,
  QES_STATUS_NUMERICAL = 14,
  QES_STATUS_NULL_POINTER = 15,
  QES_STATUS_PANIC = 16,
} QesStatus;

/**
 * Which image of the Pöschl–Teller potential a handle describes.
 */
typedef enum QesHyperbolicKind {
  QES_HYPERBOLIC_KIND_POSCHL_TELLER = 0,
  QES_HYPERBOLIC_KIND_GENERALIZED_PT = 1,
  QES_HYPERBOLIC_KIND_SCARF_PT = 2,
} QesHyperbolicKind;

typedef enum QesMethod {
  QES_METHOD_ROOTS = 0,
  QES_METHOD_TRIDIAGONAL = 1,
} QesMethod;

typedef enum QesPrecision {
  QES_PRECISION_DOUBLE = 0,
  QES_PRECISION_EXTENDED = 1,
} QesPrecision;

/**
 * Opaque potential handle.
 */
typedef struct QesPotential QesPotential;

/**
 * Opaque spectrum handle.
 */
typedef struct QesSpectrum QesSpectrum;

/**
 * Opaque eigenfunction handle.
 */
typedef struct QesWavefunction QesWavefunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message on this thread into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL,
 * or 0 when there is no error.
 *
 * # Safety
 * `buf` must be NULL or point to `len` writable bytes.
 */
size_t qes_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qes_version(void);

/**
 * Creates a Pöschl–Teller-type potential; `twoj` is twice the QES index.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum QesStatus qes_potential_hyperbolic(enum QesHyperbolicKind kind,
                                        double l,
                                        double a,
                                        double q,
                                        double alpha,
                                        uint32_t twoj,
                                        struct QesPotential **out);

/**
 * Creates a radial sextic oscillator.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum QesStatus qes_potential_sextic(double l,
                                    double b,
                                    double a,
                                    double q,
                                    uint32_t twoj,
                                    struct QesPotential **out);

/**
 * Creates a PT-symmetric anharmonic oscillator.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for a handle.
 */
enum QesStatus qes_potential_pt_anharmonic(double b,
                                           double a,
                                           double q,
                                           double ell,
                                           uint32_t twoj,
                                           struct QesPotential **out);

/**
 * V(x) as real and imaginary parts.
 *
 * # Safety
 * `pot` must come from a `qes_potential_*` constructor; `re` and `im` must
 * be valid for writes.
 */
enum QesStatus qes_potential_eval(const struct QesPotential *pot, double x, double *re, double *im);

/**
 * Releases a potential handle. NULL is ignored.
 *
 * # Safety
 * `pot` must be NULL or a handle not yet freed.
 */
void qes_potential_free(struct QesPotential *pot);

/**
 * Computes the algebraic spectrum of a potential.
 *
 * # Safety
 * `pot` must be a live handle; `out` must be valid for writes.
 */
enum QesStatus qes_spectrum_compute(const struct QesPotential *pot,
                                    enum QesMethod method,
                                    enum QesPrecision precision,
                                    struct QesSpectrum **out);

/**
 * Number of real roots in the spectrum.
 *
 * # Safety
 * `spec` must be NULL or a live handle.
 */
size_t qes_spectrum_len(const struct QesSpectrum *spec);

/**
 * Number of roots quarantined as complex.
 *
 * # Safety
 * `spec` must be NULL or a live handle.
 */
size_t qes_spectrum_complex_len(const struct QesSpectrum *spec);

/**
 * The `index`-th real spectral parameter (ascending).
 *
 * # Safety
 * `spec` must be a live handle; `out` must be valid for writes.
 */
enum QesStatus qes_spectrum_lambda(const struct QesSpectrum *spec, size_t index, double *out);

/**
 * Energy of the `index`-th real root.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be valid for writes.
 */
enum QesStatus qes_spectrum_energy(const struct QesSpectrum *spec, size_t index, double *out);

/**
 * |P_{2j+1}| at the `index`-th real root.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be valid for writes.
 */
enum QesStatus qes_spectrum_residual(const struct QesSpectrum *spec, size_t index, double *out);

/**
 * Releases a spectrum handle. NULL is ignored.
 *
 * # Safety
 * `spec` must be NULL or a handle not yet freed.
 */
void qes_spectrum_free(struct QesSpectrum *spec);

/**
 * Closed-form eigenfunction of `pot` at spectral parameter `lambda`.
 *
 * # Safety
 * `pot` must be a live handle; `out` must be valid for writes.
 */
enum QesStatus qes_wavefunction_new(const struct QesPotential *pot,
                                    double lambda,
                                    struct QesWavefunction **out);

/**
 * ψ(x) as real and imaginary parts.
 *
 * # Safety
 * `wf` must be a live handle; `re` and `im` must be valid for writes.
 */
enum QesStatus qes_wavefunction_eval(const struct QesWavefunction *wf,
                                     double x,
                                     double *re,
                                     double *im);

/**
 * Releases an eigenfunction handle. NULL is ignored.
 *
 * # Safety
 * `wf` must be NULL or a handle not yet freed.
 */
void qes_wavefunction_free(struct QesWavefunction *wf);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QES_H */
