#ifndef EULERCHI_H
#define EULERCHI_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result codes shared by all entry points.
 */
typedef enum EulerchiStatus {
  EULERCHI_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EULERCHI_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EULERCHI_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed or out-of-range argument.
   */
  EULERCHI_STATUS_INVALID_ARGUMENT = 3,
  /**
   * Input outside the mathematical domain (poles, non-convergent series).
   */
  EULERCHI_STATUS_DOMAIN_ERROR = 4,
  /**
   * A numerical procedure did not reach the requested accuracy.
   */
  EULERCHI_STATUS_NOT_CONVERGED = 5,
  /**
   * Unexpected internal failure.
   */
  EULERCHI_STATUS_INTERNAL = 6,
} EulerchiStatus;

/**
 * Opaque Dirichlet character.
 */
typedef struct EulerchiCharacter EulerchiCharacter;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *eulerchi_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void eulerchi_string_free(char *s);

/**
 * Library version as a static string.
 */
const char *eulerchi_version(void);

/**
 * Number of Dirichlet characters mod `d` (odd `d`).
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EulerchiStatus eulerchi_character_count(uint64_t d, size_t *out);

/**
 * Character number `index` mod `d` in the library's enumeration order.
 * Release with `eulerchi_character_free`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EulerchiStatus eulerchi_character_new(uint64_t d,
                                           size_t index,
                                           struct EulerchiCharacter **out);

/**
 * # Safety
 * `chi` must come from `eulerchi_character_new` and not have been freed.
 */
void eulerchi_character_free(struct EulerchiCharacter *chi);

/**
 * Modulus, order and conductor of a character. Any out pointer may be null.
 *
 * # Safety
 * `chi` must be a live handle; non-null out pointers must be writable.
 */
enum EulerchiStatus eulerchi_character_info(const struct EulerchiCharacter *chi,
                                            uint64_t *modulus,
                                            uint64_t *order,
                                            uint64_t *cond);

/**
 * Coefficients of the classical Eulerian polynomial `A_n`, comma separated.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum EulerchiStatus eulerchi_classical(size_t n, char **out);

/**
 * `A_{n,chi}(-q)` as an exact string; `q` is a rational like `"2"` or `"7/2"`.
 *
 * # Safety
 * `chi` must be a live handle, `q` a nul-terminated string, `out` writable.
 */
enum EulerchiStatus eulerchi_chi_eulerian(size_t n,
                                          const struct EulerchiCharacter *chi,
                                          const char *q,
                                          char **out);

/**
 * `L_E(s | chi)` at `bits` of precision. `value` receives the decimal value;
 * `error_log2` (may be null) receives the log2 of the rigorous error bound.
 *
 * # Safety
 * `chi` must be a live handle, `s` and `q` nul-terminated strings, `value`
 * writable.
 */
enum EulerchiStatus eulerchi_l_value(const char *s,
                                     const struct EulerchiCharacter *chi,
                                     const char *q,
                                     uint32_t bits,
                                     char **value,
                                     double *error_log2);

/**
 * Runs a verification suite with default parameters. `json` selects JSON
 * over CSV. `exit` receives 0 (all pass), 1 (a failure) or 3 (inconclusive).
 *
 * # Safety
 * `name` must be a nul-terminated string; `report_out` and `exit` writable.
 */
enum EulerchiStatus eulerchi_verify_suite(const char *name,
                                          bool json,
                                          char **report_out,
                                          int32_t *exit);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EULERCHI_H */
