#ifndef HPOISSON_H
#define HPOISSON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HpStatus {
  HP_STATUS_OK = 0,
  /**
   * The computation succeeded and the answer is "no".
   */
  HP_STATUS_CHECK_FAILED = 1,
  HP_STATUS_PARSE_ERROR = 2,
  HP_STATUS_INVALID_ARGUMENT = 3,
  HP_STATUS_NULL_POINTER = 4,
  HP_STATUS_PANIC = 5,
} HpStatus;

typedef struct HpBivector HpBivector;

typedef struct HpConstraintSystem HpConstraintSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *hp_last_error_message(void);

/**
 * # Safety
 * `s` is null or was returned by this library and not yet freed.
 */
void hp_string_free(char *s);

/**
 * Parses a bivector from its JSON form.
 *
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
enum HpStatus hp_bivector_from_json(const char *json, struct HpBivector **out);

/**
 * Named catalog structure. `params` is null or a comma-separated list of
 * `NAME=VALUE` pairs with rational values; unassigned parameters stay
 * symbolic.
 *
 * # Safety
 * `name` is a nul-terminated string, `params` is null or one; `out` is
 * writable.
 */
enum HpStatus hp_bivector_catalog(const char *name, const char *params, struct HpBivector **out);

/**
 * # Safety
 * `b` is a live handle; `out` is writable.
 */
enum HpStatus hp_bivector_to_json(const struct HpBivector *b, char **out);

/**
 * Runs one check (`jacobi`, `sigma`, `tau` or `unimodular`). Returns
 * `HP_STATUS_OK` on pass and `HP_STATUS_CHECK_FAILED` on failure; in the latter case the
 * report with its witness is written to `report` when it is not null.
 *
 * # Safety
 * `b` is a live handle, `check` a nul-terminated string, `report` null or
 * writable.
 */
enum HpStatus hp_bivector_verify(const struct HpBivector *b, const char *check, char **report);

/**
 * `{f, g}` for polynomials over the bivector's variables.
 *
 * # Safety
 * `b` is a live handle, `f` and `g` nul-terminated strings, `out` writable.
 */
enum HpStatus hp_bivector_bracket(const struct HpBivector *b,
                                  const char *f,
                                  const char *g,
                                  char **out);

/**
 * # Safety
 * `b` is null or a handle not yet freed.
 */
void hp_bivector_free(struct HpBivector *b);

/**
 * Jacobi constraints of the generic invariant tensor of the given size
 * and coordinate degree.
 *
 * # Safety
 * `out` is writable.
 */
enum HpStatus hp_constraints_generate(size_t n, size_t degree, struct HpConstraintSystem **out);

/**
 * # Safety
 * `json` is a nul-terminated string; `out` is writable.
 */
enum HpStatus hp_constraints_from_json(const char *json, struct HpConstraintSystem **out);

/**
 * # Safety
 * `s` is a live handle; `out` is writable.
 */
enum HpStatus hp_constraints_to_json(const struct HpConstraintSystem *s, char **out);

/**
 * `HP_STATUS_OK` when both systems span the same space, `HP_STATUS_CHECK_FAILED`
 * otherwise.
 *
 * # Safety
 * `a` and `b` are live handles.
 */
enum HpStatus hp_constraints_equiv(const struct HpConstraintSystem *a,
                                   const struct HpConstraintSystem *b);

/**
 * # Safety
 * `s` is null or a handle not yet freed.
 */
void hp_constraints_free(struct HpConstraintSystem *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HPOISSON_H */
