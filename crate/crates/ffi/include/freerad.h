#ifndef FREERAD_H
#define FREERAD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Rank value selecting infinitely many generators.
 */
#define FREERAD_RANK_INFINITE 0

typedef enum FreeradStatus {
  FREERAD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  FREERAD_STATUS_NULL_POINTER = 1,
  /**
   * Bad arguments or malformed input (also JSON schema errors).
   */
  FREERAD_STATUS_INVALID_INPUT = 2,
  /**
   * Condition loss, singular moments, non-convergence and the like.
   */
  FREERAD_STATUS_NUMERIC_FAILURE = 3,
  /**
   * The caller's buffer is shorter than the result.
   */
  FREERAD_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * An internal panic was caught at the boundary.
   */
  FREERAD_STATUS_PANIC = 5,
} FreeradStatus;

typedef enum FreeradRole {
  FREERAD_ROLE_PHI = 0,
  FREERAD_ROLE_PSI = 1,
} FreeradRole;

typedef enum FreeradVerdict {
  FREERAD_VERDICT_CONSISTENT_PD = 0,
  FREERAD_VERDICT_CONSISTENT_CND = 1,
  FREERAD_VERDICT_CERTIFIED_NOT = 2,
  FREERAD_VERDICT_INDETERMINATE = 3,
} FreeradVerdict;

/**
 * Atomic measure under construction.
 */
typedef struct FreeradMeasure FreeradMeasure;

/**
 * Radial function value table with its rank and role.
 */
typedef struct FreeradRadial FreeradRadial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *freerad_last_error(void);

/**
 * Number of reduced words of length `n`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum FreeradStatus freerad_sphere_size(uint32_t r, size_t n, uint64_t *out);

/**
 * Spherical function value `φ̇_s(n)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum FreeradStatus freerad_spherical_value(uint32_t r, double s, size_t n, double *out);

/**
 * `ψ̇_s(n) = (1 - φ̇_s(n)) / (1 - s)`, continuous at `s = 1`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum FreeradStatus freerad_psi_value(uint32_t r, double s, size_t n, double *out);

/**
 * `ψ̇_1(n)`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum FreeradStatus freerad_psi_one(uint32_t r, size_t n, double *out);

/**
 * `s = q/(q+1) (q^-z + q^(z-1))` for a finite rank.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum FreeradStatus freerad_s_from_z(uint32_t r, double z, double *out);

/**
 * Empty measure. Never null.
 */
struct FreeradMeasure *freerad_measure_new(void);

/**
 * Add an atom of weight `w > 0` at `s`. Support and distinctness are
 * checked when the measure is used.
 *
 * # Safety
 * `m` must be null or a live measure handle.
 */
enum FreeradStatus freerad_measure_push(struct FreeradMeasure *m, double s, double w);

/**
 * # Safety
 * `m` must be null or a measure handle not freed before.
 */
void freerad_measure_free(struct FreeradMeasure *m);

/**
 * `Σ w φ̇_s` (role `PHI`) or `Σ w ψ̇_s` (role `PSI`) at lengths `0..=depth`.
 *
 * # Safety
 * `m` must be a live measure handle and `out` valid for writes.
 */
enum FreeradStatus freerad_synthesize(uint32_t r,
                                      const struct FreeradMeasure *m,
                                      size_t depth,
                                      enum FreeradRole which,
                                      struct FreeradRadial **out);

/**
 * Radial function from `len` values.
 *
 * # Safety
 * `values` must point to `len` readable doubles; `out` valid for writes.
 */
enum FreeradStatus freerad_radial_new(uint32_t r,
                                      enum FreeradRole which,
                                      const double *values,
                                      size_t len,
                                      struct FreeradRadial **out);

/**
 * Parse `{"rank": .., "role": .., "values": [..]}`.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` valid for writes.
 */
enum FreeradStatus freerad_radial_from_json(const char *json, struct FreeradRadial **out);

/**
 * Serialize to JSON. Release the string with [`freerad_string_free`].
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum FreeradStatus freerad_radial_to_json(const struct FreeradRadial *f, char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library and not freed before.
 */
void freerad_string_free(char *s);

/**
 * Number of stored values (`depth + 1`).
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum FreeradStatus freerad_radial_len(const struct FreeradRadial *f, size_t *out);

/**
 * Copy the values into `buf`. `written` always receives the full length;
 * `BUFFER_TOO_SMALL` is returned when `cap` is shorter and nothing is copied.
 *
 * # Safety
 * `buf` must be writable for `cap` doubles; `f` a live handle.
 */
enum FreeradStatus freerad_radial_values(const struct FreeradRadial *f,
                                         double *buf,
                                         size_t cap,
                                         size_t *written);

/**
 * # Safety
 * `f` must be null or a handle not freed before.
 */
void freerad_radial_free(struct FreeradRadial *f);

/**
 * `exp(-t ψ)` for a ψ-role function and `t > 0`.
 *
 * # Safety
 * `psi` must be a live handle; `out` valid for writes.
 */
enum FreeradStatus freerad_schoenberg(const struct FreeradRadial *psi,
                                      double t,
                                      struct FreeradRadial **out);

/**
 * Positive definiteness test of a φ table via its moment sequence.
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum FreeradStatus freerad_decide_pd(const struct FreeradRadial *f,
                                     double tol,
                                     enum FreeradVerdict *out);

/**
 * Conditional negative definiteness test of a ψ table.
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
enum FreeradStatus freerad_decide_cnd(const struct FreeradRadial *f,
                                      double tol,
                                      enum FreeradVerdict *out);

/**
 * Gram-matrix test on the Cayley ball of `radius`: positive semidefinite
 * for a φ-role table, Schoenberg-kernel test for a ψ-role table.
 *
 * # Safety
 * `f` must be a live handle; `min_eig` and `holds` valid for writes.
 */
enum FreeradStatus freerad_gram_check(const struct FreeradRadial *f,
                                      size_t radius,
                                      double tol,
                                      double *min_eig,
                                      bool *holds);

/**
 * Linear growth bound `ψ̇(n) <= c n` with `c = ψ̇(1) r/(r-1)`.
 *
 * # Safety
 * `f` must be a live handle; `c` and `holds` valid for writes.
 */
enum FreeradStatus freerad_linear_bound(const struct FreeradRadial *f, double *c, bool *holds);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FREERAD_H */
