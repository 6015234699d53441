#ifndef VOTECX_H
#define VOTECX_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum VcxBriberyVariant {
  VCX_BRIBERY_VARIANT_PLAIN = 0,
  VCX_BRIBERY_VARIANT_WEIGHTED = 1,
  VCX_BRIBERY_VARIANT_PRICED = 2,
  VCX_BRIBERY_VARIANT_WEIGHTED_PRICED = 3,
} VcxBriberyVariant;

typedef enum VcxControlType {
  VCX_CONTROL_TYPE_ADD_CANDIDATES = 0,
  VCX_CONTROL_TYPE_DELETE_CANDIDATES = 1,
  VCX_CONTROL_TYPE_PARTITION_CANDIDATES = 2,
  VCX_CONTROL_TYPE_RUNOFF_PARTITION_CANDIDATES = 3,
  VCX_CONTROL_TYPE_ADD_VOTERS = 4,
  VCX_CONTROL_TYPE_DELETE_VOTERS = 5,
  VCX_CONTROL_TYPE_PARTITION_VOTERS = 6,
} VcxControlType;

typedef enum VcxEncoding {
  VCX_ENCODING_BINARY = 0,
  VCX_ENCODING_UNARY_WEIGHTS = 1,
  VCX_ENCODING_UNARY_PRICES = 2,
} VcxEncoding;

typedef enum VcxStatus {
  VCX_STATUS_OK = 0,
  VCX_STATUS_NULL_POINTER = 1,
  VCX_STATUS_INVALID_ARGUMENT = 2,
  VCX_STATUS_PARSE_ERROR = 3,
  VCX_STATUS_BUDGET_EXCEEDED = 4,
  VCX_STATUS_BUFFER_TOO_SMALL = 5,
  VCX_STATUS_FAILED = 6,
  VCX_STATUS_PANIC = 7,
} VcxStatus;

typedef enum VcxSystem {
  VCX_SYSTEM_PLURALITY = 0,
  VCX_SYSTEM_CONDORCET = 1,
  VCX_SYSTEM_APPROVAL = 2,
} VcxSystem;

/**
 * Tie handling in subelections; `None` for non-partition control types.
 */
typedef enum VcxTie {
  VCX_TIE_NONE = 0,
  VCX_TIE_ELIMINATE = 1,
  VCX_TIE_PROMOTE = 2,
} VcxTie;

/**
 * An election read from the text format, with its spoilers and voter pool.
 */
typedef struct VcxElection VcxElection;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The message of the last failed call on this thread, or null. Valid until
 * the next call into this library from the same thread.
 */
const char *vcx_last_error(void);

/**
 * Parses a NUL-terminated election file. On success `*out_handle` owns a new
 * handle.
 *
 * # Safety
 * `text` must be a valid C string and `out_handle` a valid pointer.
 */
enum VcxStatus vcx_election_parse(const char *text, struct VcxElection **out_handle);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `e` must come from `vcx_election_parse` and not be used afterwards.
 */
void vcx_election_free(struct VcxElection *e);

/**
 * # Safety
 * Pointers must be valid.
 */
enum VcxStatus vcx_election_counts(const struct VcxElection *e,
                                   uintptr_t *candidates,
                                   uintptr_t *voters);

/**
 * Looks up a candidate index by name.
 *
 * # Safety
 * `name` must be a valid C string; other pointers must be valid.
 */
enum VcxStatus vcx_candidate_index(const struct VcxElection *e, const char *name, uintptr_t *index);

/**
 * Canonical text of the election. Free the result with `vcx_string_free`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum VcxStatus vcx_election_serialize(const struct VcxElection *e, char **text);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void vcx_string_free(char *s);

/**
 * Points per candidate under `alpha` (approval scores when `alpha_len` is
 * 0). `scores_out` needs room for every candidate.
 *
 * # Safety
 * `alpha` must hold `alpha_len` values and `scores_out` `out_len` slots.
 */
enum VcxStatus vcx_scores(const struct VcxElection *e,
                          const uint64_t *alpha,
                          uintptr_t alpha_len,
                          uint64_t *scores_out,
                          uintptr_t out_len);

/**
 * # Safety
 * Pointers must be valid.
 */
enum VcxStatus vcx_dodgson_score(const struct VcxElection *e, uintptr_t c, uint64_t *score);

/**
 * `*defined` is false when no voter subset makes `c` a Condorcet winner.
 *
 * # Safety
 * Pointers must be valid.
 */
enum VcxStatus vcx_young_score(const struct VcxElection *e,
                               uintptr_t c,
                               uint64_t *score,
                               bool *defined);

/**
 * Marks Kemeny winners with 1 in `flags` (one byte per candidate).
 *
 * # Safety
 * `flags` must hold `flags_len` bytes.
 */
enum VcxStatus vcx_kemeny_winners(const struct VcxElection *e, uint8_t *flags, uintptr_t flags_len);

/**
 * Can manipulators with the given weights make `target` win? `alpha_len`
 * 0 means approval voting. `step_limit` 0 uses the default search budget.
 *
 * # Safety
 * Arrays must hold the stated number of values; `yes` must be valid.
 */
enum VcxStatus vcx_manipulate(const struct VcxElection *e,
                              const uint64_t *alpha,
                              uintptr_t alpha_len,
                              uintptr_t target,
                              const uint64_t *weights,
                              uintptr_t weights_len,
                              bool unique,
                              uint64_t step_limit,
                              bool *yes);

/**
 * Can `target` be made a winner by bribery within `budget`?
 *
 * # Safety
 * `alpha` must hold `alpha_len` values; `yes` must be valid.
 */
enum VcxStatus vcx_bribe(const struct VcxElection *e,
                         const uint64_t *alpha,
                         uintptr_t alpha_len,
                         uintptr_t target,
                         uint64_t budget,
                         enum VcxBriberyVariant variant,
                         enum VcxEncoding encoding,
                         bool unique,
                         uint64_t step_limit,
                         bool *yes);

/**
 * Control problem over the handle's election, spoilers and voter pool.
 * Winners are always unique winners.
 *
 * # Safety
 * `yes` must be valid.
 */
enum VcxStatus vcx_control(const struct VcxElection *e,
                           enum VcxSystem system,
                           enum VcxControlType control_type,
                           bool destructive,
                           enum VcxTie tie,
                           uintptr_t target,
                           uintptr_t limit,
                           uint64_t step_limit,
                           bool *yes);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VOTECX_H */
