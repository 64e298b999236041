#ifndef HALFLAT_H
#define HALFLAT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HlStatus {
  HL_STATUS_OK = 0,
  // A null pointer or a string that is not UTF-8.
  HL_STATUS_INVALID_ARGUMENT = 1,
  // A JSON document violated its schema.
  HL_STATUS_PARSE_ERROR = 2,
  HL_STATUS_INVALID_CONFIG = 3,
  // A mathematical precondition failed (pairing, rank, cutoff, …).
  HL_STATUS_INVARIANT = 4,
  HL_STATUS_UNKNOWN_SUITE = 5,
  // The computation panicked; this is a bug.
  HL_STATUS_INTERNAL = 6,
} HlStatus;

typedef struct HlContext HlContext;

typedef struct HlElement HlElement;

typedef struct HlOmegaSpec HlOmegaSpec;

typedef struct HlReport HlReport;

// The message of the last failed call on this thread, or null. Valid until
// the next failing call on the same thread; do not free.
const char *hl_last_error(void);

// # Safety
// `s` must be null or a string returned by this library.
void hl_string_free(char *s);

// Creates a context from a JSON config; `config_json` may be null for the defaults.
//
// # Safety
// `config_json` must be null or a valid C string; `out` must be writable.
enum HlStatus hl_context_new(const char *config_json, struct HlContext **out);

// # Safety
// `ctx` must be null or a handle from [`hl_context_new`], not yet freed.
void hl_context_free(struct HlContext *ctx);

// # Safety
// Pointers must be valid; `out` must be writable.
enum HlStatus hl_element_parse(const struct HlContext *ctx,
                               const char *json,
                               struct HlElement **out);

// # Safety
// `el` must be null or a live element handle.
void hl_element_free(struct HlElement *el);

// # Safety
// Pointers must be valid; free the result with [`hl_string_free`].
enum HlStatus hl_element_to_json(const struct HlElement *el, char **out);

// `u_n v`.
//
// # Safety
// Pointers must be valid; `out` must be writable.
enum HlStatus hl_nth_product(const struct HlContext *ctx,
                             const struct HlElement *u,
                             int64_t n,
                             const struct HlElement *v,
                             struct HlElement **out);

// The Zhu normal form of `el` as JSON.
//
// # Safety
// Pointers must be valid; free the result with [`hl_string_free`].
enum HlStatus hl_zhu_reduce(const struct HlContext *ctx, const struct HlElement *el, char **out);

// # Safety
// Pointers must be valid; `out` must be writable.
enum HlStatus hl_omega_parse(const struct HlContext *ctx,
                             const char *json,
                             struct HlOmegaSpec **out);

// # Safety
// `spec` must be null or a live spec handle.
void hl_omega_free(struct HlOmegaSpec *spec);

// Writes whether `M_ω` is an `A`-module. On `false`, `(i, j)` is the
// 0-based pair with `D_i f_j ≠ D_j f_i`; otherwise both are −1.
//
// # Safety
// Pointers must be valid and writable.
enum HlStatus hl_omega_is_a_module(const struct HlOmegaSpec *spec,
                                   bool *is_a_module,
                                   int64_t *i,
                                   int64_t *j);

// Decides `M_ω(s1) ≅ M_ω(s2)`; writes the shift vector as a JSON array,
// or `null` when not isomorphic.
//
// # Safety
// Pointers must be valid; free the result with [`hl_string_free`].
enum HlStatus hl_omega_iso(const struct HlOmegaSpec *s1, const struct HlOmegaSpec *s2, char **out);

// Runs a verification suite. The report is produced even when checks fail.
//
// # Safety
// Pointers must be valid; `out` must be writable.
enum HlStatus hl_verify(const struct HlContext *ctx, const char *suite, struct HlReport **out);

// # Safety
// `report` must be a live report handle.
bool hl_report_passed(const struct HlReport *report);

// # Safety
// Pointers must be valid; free the result with [`hl_string_free`].
enum HlStatus hl_report_to_json(const struct HlReport *report, char **out);

// # Safety
// `report` must be null or a live report handle.
void hl_report_free(struct HlReport *report);

#endif  /* HALFLAT_H */
