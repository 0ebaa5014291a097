#ifndef WEAKFREE_H
#define WEAKFREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum WfFormat {
  WF_FORMAT_ASCII = 0,
  WF_FORMAT_SVG = 1,
  WF_FORMAT_JSON = 2,
} WfFormat;

/*
 Status codes; the numeric values match the `weakfree` CLI exit codes.
 */
typedef enum WfStatus {
  WF_STATUS_OK = 0,
  WF_STATUS_INTERNAL = 1,
  WF_STATUS_SYNTAX = 2,
  WF_STATUS_VALIDATION = 3,
  WF_STATUS_RESOURCE = 4,
  WF_STATUS_SELFTEST_FAILED = 5,
  WF_STATUS_NULL_ARGUMENT = 6,
  WF_STATUS_INVALID_UTF8 = 7,
} WfStatus;

typedef enum WfStrategy {
  WF_STRATEGY_FIRST = 0,
  WF_STRATEGY_SEEDED = 1,
} WfStrategy;

/*
 A fixed alphabet with its generator store.
 */
typedef struct WfSession WfSession;

/*
 A finite semigroup given by its multiplication table.
 */
typedef struct WfTable WfTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread; empty after a success.
 The pointer stays valid until the next call on this thread.
 */
const char *wf_last_error(void);

/*
 # Safety
 `s` must be null or a string returned by this library, not yet freed.
 */
void wf_string_free(char *s);

/*
 Opens a session over a comma-separated alphabet such as `"x,y"`.
 `height_cap == 0` selects the default cap, `max_states == 0` the default
 gorge search limit.

 # Safety
 `alphabet` must be a NUL-terminated string; `out` must be writable.
 */
enum WfStatus wf_session_new(const char *alphabet,
                             uint32_t height_cap,
                             size_t max_states,
                             struct WfSession **out);

/*
 # Safety
 `s` must be null or a live session handle.
 */
void wf_session_free(struct WfSession *s);

/*
 Normal form of a word, as landscape text.

 # Safety
 Pointers must be valid; `out` receives a string to free with `wf_string_free`.
 */
enum WfStatus wf_normalize(const struct WfSession *s, const char *word, char **out);

/*
 Whether two words denote the same element.

 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_equivalent(const struct WfSession *s, const char *u, const char *v, bool *out);

/*
 Normal form of the product `u v`.

 # Safety
 Pointers must be valid; `out` receives a string to free with `wf_string_free`.
 */
enum WfStatus wf_multiply(const struct WfSession *s, const char *u, const char *v, char **out);

/*
 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_is_idempotent(const struct WfSession *s, const char *u, bool *out);

/*
 Green's relation test `u rel v`; `rel` is one of `R L J H D leqR leqL leqJ`.

 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_green(const struct WfSession *s,
                       const char *rel,
                       const char *u,
                       const char *v,
                       bool *out);

/*
 Natural partial order `v <= u`.

 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_natural_leq(const struct WfSession *s, const char *v, const char *u, bool *out);

/*
 Gorge cross-check for idempotency: writes 1 (true), 0 (false) or -1 (unknown).

 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_is_idempotent_gorge(const struct WfSession *s, const char *u, int32_t *out);

/*
 Draws a landscape (validated as given, not normalised).

 # Safety
 Pointers must be valid; `out` receives a string to free with `wf_string_free`.
 */
enum WfStatus wf_render(const struct WfSession *s,
                        const char *landscape,
                        enum WfFormat format,
                        char **out);

/*
 Loads a table from JSON `{"size": m, "table": [[..]..], "identity": k?}`.

 # Safety
 `json` must be a NUL-terminated string; `out` must be writable.
 */
enum WfStatus wf_table_load_json(const char *json, struct WfTable **out);

/*
 The full transformation monoid on `n` points.

 # Safety
 `out` must be writable.
 */
enum WfStatus wf_table_transformations(size_t n, struct WfTable **out);

/*
 # Safety
 `t` must be null or a live table handle.
 */
void wf_table_free(struct WfTable *t);

/*
 Number of elements, or 0 for a null handle.

 # Safety
 `t` must be null or a live table handle.
 */
size_t wf_table_size(const struct WfTable *t);

/*
 # Safety
 Pointers must be valid.
 */
enum WfStatus wf_table_is_regular(const struct WfTable *t, bool *out);

/*
 Builds a skeleton mapping into the table and writes its JSON report.
 `map` lists letter images such as `"x=5,y=3"`.

 # Safety
 Pointers must be valid; `out` receives a string to free with `wf_string_free`.
 */
enum WfStatus wf_skeleton_report(const struct WfSession *s,
                                 const struct WfTable *t,
                                 const char *map,
                                 enum WfStrategy strategy,
                                 uint64_t seed,
                                 uint32_t max_height,
                                 char **out);

/*
 Runs the property suite; `out` receives one `PASS`/`FAIL` line per property.
 Returns `SelftestFailed` if any line fails.

 # Safety
 `out` must be writable; the string is freed with `wf_string_free`.
 */
enum WfStatus wf_selftest(uint32_t max_height, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEAKFREE_H */
