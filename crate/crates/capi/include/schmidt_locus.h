#ifndef SCHMIDT_LOCUS_H
#define SCHMIDT_LOCUS_H

/* Generated by cbindgen from the Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code returned by every fallible function.
typedef enum SlStatus {
  // The call succeeded.
  SL_STATUS_OK = 0,
  // A required pointer argument was NULL.
  SL_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  SL_STATUS_INVALID_UTF8 = 2,
  // An argument violated a documented precondition.
  SL_STATUS_INVALID_INPUT = 3,
  // Dimensions of an input did not match what the operation requires.
  SL_STATUS_SHAPE_MISMATCH = 4,
  // A matrix that must be Hermitian was not.
  SL_STATUS_NOT_HERMITIAN = 5,
  // A matrix that must be positive semidefinite was not.
  SL_STATUS_NOT_POSITIVE_SEMIDEFINITE = 6,
  // A density matrix whose trace is not 1.
  SL_STATUS_TRACE_NOT_ONE = 7,
  // An input contained NaN or infinite entries.
  SL_STATUS_NON_FINITE = 8,
  // The request is well-formed but unsupported.
  SL_STATUS_UNSUPPORTED = 9,
  // A structured input failed to parse; the error message names the path.
  SL_STATUS_PARSE_ERROR = 10,
  // An internal invariant failed; report this as a bug.
  SL_STATUS_INTERNAL = 11,
} SlStatus;

// Opaque handle to a completed certification report.
typedef struct SlReport SlReport;

// Opaque handle to a validated bipartite mixed state.
typedef struct SlState SlState;

// Probe budget and thresholds, mirroring the library defaults.
//
// Obtain defaults with [`sl_probe_config_default`] and override fields as
// needed; passing NULL wherever a config is accepted also selects defaults.
typedef struct SlProbeConfig {
  // Random directions sampled per emptiness probe.
  uint64_t samples;
  // Independent descent restarts per emptiness probe.
  uint64_t restarts;
  // Maximum coordinate-descent steps per restart.
  uint64_t descent_steps;
  // Descent stops when the step size falls below this value.
  double step_tolerance;
  // Relative singular-value gap above which a locus is declared empty.
  double emptiness_gap;
  // Master seed; identical seeds reproduce identical certificates.
  uint64_t seed;
} SlProbeConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of this library as a static NUL-terminated string; never freed.
const char *sl_version(void);

// Message describing the most recent failure on the calling thread, as a
// NUL-terminated string. The pointer stays valid until the next failing
// call on the same thread; do not free it. Empty if nothing failed yet.
const char *sl_last_error_message(void);

// Fill `out` with the default probe configuration.
enum SlStatus sl_probe_config_default(struct SlProbeConfig *out);

// Parse a state-file JSON document (ensemble or density-matrix form) into a
// new state handle. On success `*out` owns the state; release it with
// [`sl_state_free`].
enum SlStatus sl_state_parse(const char *json, struct SlState **out);

// Release a state handle. NULL is ignored.
void sl_state_free(struct SlState *state);

// Dimension of the first tensor factor.
enum SlStatus sl_state_m(const struct SlState *state, uint64_t *out);

// Dimension of the second tensor factor.
enum SlStatus sl_state_n(const struct SlState *state, uint64_t *out);

// Rank of the state (dimension of its range).
enum SlStatus sl_state_rank(const struct SlState *state, uint64_t *out);

// Schmidt rank of a pure state (a single-member ensemble). Fails with
// `InvalidInput` when the state is mixed.
enum SlStatus sl_state_schmidt_rank(const struct SlState *state, uint64_t *out);

// Certify a Schmidt-number lower bound for `state`. `config` may be NULL to
// use defaults. On success `*out` owns the report; release it with
// [`sl_report_free`].
enum SlStatus sl_analyze(const struct SlState *state,
                         const struct SlProbeConfig *config,
                         struct SlReport **out);

// Release a report handle. NULL is ignored.
void sl_report_free(struct SlReport *report);

// Certified Schmidt-number lower bound (exact and probabilistic evidence).
enum SlStatus sl_report_certified_bound(const struct SlReport *report, uint64_t *out);

// Lower bound supported by exact evidence alone.
enum SlStatus sl_report_exact_bound(const struct SlReport *report, uint64_t *out);

// Bound predicted for generic states of the same dimensions.
enum SlStatus sl_report_generic_bound(const struct SlReport *report, uint64_t *out);

// Serialize the full report as a JSON string. On success `*out` is a
// NUL-terminated string owned by the caller; release it with
// [`sl_string_free`].
enum SlStatus sl_report_to_json(const struct SlReport *report, char **out);

// Release a string returned by this library. NULL is ignored.
void sl_string_free(char *s);

// Best generic Schmidt-number prediction for dimensions (m, r): the bound is
// written to `out_bound` and the optimal level to `out_t_star` (0 when no
// level qualifies). Either out-pointer may be NULL to skip that value, but
// not both.
enum SlStatus sl_generic_bound(uint64_t m, uint64_t r, uint64_t *out_bound, uint64_t *out_t_star);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHMIDT_LOCUS_H */
