#ifndef ADDTRANS_H
#define ADDTRANS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result of every fallible call.
 */
typedef enum AddtransStatus {
  ADDTRANS_STATUS_OK = 0,
  ADDTRANS_STATUS_NULL_ARGUMENT = 1,
  ADDTRANS_STATUS_INVALID_UTF8 = 2,
  ADDTRANS_STATUS_UNKNOWN_FUNCTION = 3,
  ADDTRANS_STATUS_UNKNOWN_IDENTITY = 4,
  ADDTRANS_STATUS_DOMAIN = 5,
  ADDTRANS_STATUS_OUT_OF_RANGE = 6,
  ADDTRANS_STATUS_UNDEFINED = 7,
  ADDTRANS_STATUS_RESOURCE = 8,
  ADDTRANS_STATUS_PARSE = 9,
  ADDTRANS_STATUS_PRECONDITION = 10,
  /*
   The value does not fit the requested fixed-width output.
   */
  ADDTRANS_STATUS_NOT_REPRESENTABLE = 11,
  ADDTRANS_STATUS_PANIC = 12,
} AddtransStatus;

/*
 An arithmetic function resolved from a spec such as `"phi_of:big_omega"`.
 */
typedef struct AddtransFunction AddtransFunction;

/*
 Values of a function on `1..=len`.
 */
typedef struct AddtransTable AddtransTable;

/*
 Report counts by verdict from [`addtrans_verify`].
 */
typedef struct AddtransVerdictCounts {
  uint64_t pass;
  uint64_t fail;
  uint64_t erratum_candidate;
  uint64_t inapplicable;
} AddtransVerdictCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Resolves `spec` into a new function handle.

 # Safety
 `spec` must be a valid NUL-terminated string and `out` a writable pointer.
 */
enum AddtransStatus addtrans_function_new(const char *spec, struct AddtransFunction **out);

/*
 # Safety
 `f` must be null or a handle from this library that has not been freed.
 */
void addtrans_function_free(struct AddtransFunction *f);

/*
 New handle for the additive transform of `f`.

 # Safety
 `f` must be a live handle and `out` a writable pointer.
 */
enum AddtransStatus addtrans_transform(const struct AddtransFunction *f,
                                       struct AddtransFunction **out);

/*
 `f(n)` for a decimal `n`, written as an exact string.

 # Safety
 `f` must be a live handle, `n` a NUL-terminated string, `out` writable.
 */
enum AddtransStatus addtrans_eval(const struct AddtransFunction *f, const char *n, char **out);

/*
 `f(n)` as a reduced fraction `num/den` with `den > 0`.

 # Safety
 `f` must be a live handle; `num` and `den` must be writable.
 */
enum AddtransStatus addtrans_eval_i64(const struct AddtransFunction *f,
                                      uint64_t n,
                                      int64_t *num,
                                      uint64_t *den);

/*
 `∂f/∂p` at decimal `n`; fails with `Domain` when `p` does not divide `n`.

 # Safety
 `f` must be a live handle, `n` a NUL-terminated string, `out` writable.
 */
enum AddtransStatus addtrans_partial_derivative(const struct AddtransFunction *f,
                                                uint64_t p,
                                                const char *n,
                                                char **out);

/*
 `(f*g)(n)` by divisor sum at decimal `n`.

 # Safety
 `f`, `g` must be live handles, `n` a NUL-terminated string, `out` writable.
 */
enum AddtransStatus addtrans_convolve_at(const struct AddtransFunction *f,
                                         const struct AddtransFunction *g,
                                         const char *n,
                                         char **out);

/*
 Table of `f` on `1..=bound`.

 # Safety
 `f` must be a live handle and `out` writable.
 */
enum AddtransStatus addtrans_table_tabulate(const struct AddtransFunction *f,
                                            uint64_t bound,
                                            struct AddtransTable **out);

/*
 Table of `f*g` on `1..=bound`.

 # Safety
 `f`, `g` must be live handles and `out` writable.
 */
enum AddtransStatus addtrans_table_convolve(const struct AddtransFunction *f,
                                            const struct AddtransFunction *g,
                                            uint64_t bound,
                                            struct AddtransTable **out);

/*
 Table of `μ*t`.

 # Safety
 `t` must be a live table handle and `out` writable.
 */
enum AddtransStatus addtrans_table_mobius_invert(const struct AddtransTable *t,
                                                 struct AddtransTable **out);

/*
 Number of entries; 0 for a null handle.

 # Safety
 `t` must be null or a live table handle.
 */
uint64_t addtrans_table_len(const struct AddtransTable *t);

/*
 Entry at `n` (1-based) as an exact string.

 # Safety
 `t` must be a live table handle and `out` writable.
 */
enum AddtransStatus addtrans_table_get(const struct AddtransTable *t, uint64_t n, char **out);

/*
 # Safety
 `t` must be null or a table handle that has not been freed.
 */
void addtrans_table_free(struct AddtransTable *t);

/*
 Runs identity checks on `[1, n_max]`. `ids` and `functions` are
 comma-separated; an empty `ids` gives an empty report and a null
 `functions` selects the whole catalog. The JSON report goes to `json_out`
 and per-verdict counts to `counts` (either may be null).

 # Safety
 `ids` must be NUL-terminated, `functions` null or NUL-terminated, and the
 outputs null or writable.
 */
enum AddtransStatus addtrans_verify(const char *ids,
                                    const char *functions,
                                    uint64_t n_max,
                                    char **json_out,
                                    struct AddtransVerdictCounts *counts);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void addtrans_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into this library on the same thread.
 */
const char *addtrans_last_error_message(void);

/*
 Library version as a static string.
 */
const char *addtrans_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ADDTRANS_H */
