#ifndef MADCAP_H
#define MADCAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MadcapStatus {
  MADCAP_STATUS_OK = 0,
  MADCAP_STATUS_NULL_POINTER = 1,
  MADCAP_STATUS_INVALID_RATES = 2,
  MADCAP_STATUS_INVALID_ARGUMENT = 3,
  MADCAP_STATUS_NOT_INVERTIBLE = 4,
  MADCAP_STATUS_INTERNAL = 5,
} MadcapStatus;

typedef enum MadcapAntidegradable {
  MADCAP_ANTIDEGRADABLE_NO = 0,
  MADCAP_ANTIDEGRADABLE_YES = 1,
  MADCAP_ANTIDEGRADABLE_UNKNOWN = 2,
} MadcapAntidegradable;

typedef enum MadcapQuantity {
  MADCAP_QUANTITY_Q = 0,
  MADCAP_QUANTITY_CP = 1,
  MADCAP_QUANTITY_QE = 2,
} MadcapQuantity;

typedef enum MadcapEstimateStatus {
  MADCAP_ESTIMATE_STATUS_EXACT = 0,
  MADCAP_ESTIMATE_STATUS_ZERO = 1,
  MADCAP_ESTIMATE_STATUS_LOWER_BOUND = 2,
  MADCAP_ESTIMATE_STATUS_INTERVAL = 3,
} MadcapEstimateStatus;

/**
 * Opaque qutrit channel.
 */
typedef struct MadcapChannel MadcapChannel;

typedef struct MadcapClassification {
  /**
   * 1 when degradable, 0 otherwise.
   */
  int32_t degradable;
  enum MadcapAntidegradable antidegradable;
} MadcapClassification;

/**
 * Capacity value or bounds. `upper` is meaningful only when `has_upper`
 * is nonzero.
 */
typedef struct MadcapEstimate {
  double lower;
  double upper;
  int32_t has_upper;
  enum MadcapEstimateStatus status;
} MadcapEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *madcap_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *madcap_version(void);

/**
 * Creates a channel with rates `g1` (1 -> 0), `g2` (2 -> 1), `g3` (2 -> 0).
 */
enum MadcapStatus madcap_channel_new(double g1, double g2, double g3, struct MadcapChannel **out);

/**
 * Releases a channel; null is ignored.
 */
void madcap_channel_free(struct MadcapChannel *channel);

/**
 * Writes the three rates of `channel` to `out[0..3]`.
 */
enum MadcapStatus madcap_channel_rates(const struct MadcapChannel *channel, double *out);

/**
 * Output state for a 3x3 input state; all arrays hold 9 entries.
 */
enum MadcapStatus madcap_channel_apply(const struct MadcapChannel *channel,
                                       const double *rho_re,
                                       const double *rho_im,
                                       double *out_re,
                                       double *out_im);

/**
 * Environment state (4x4, 16 entries per output array) for a 3x3 input.
 */
enum MadcapStatus madcap_channel_complement(const struct MadcapChannel *channel,
                                            const double *rho_re,
                                            const double *rho_im,
                                            double *out_re,
                                            double *out_im);

/**
 * Degradability and antidegradability with Choi-eigenvalue tolerance `tol`.
 */
enum MadcapStatus madcap_channel_classify(const struct MadcapChannel *channel,
                                          double tol,
                                          struct MadcapClassification *out);

/**
 * Capacity estimate. When `method` is non-null the method tag is copied
 * into it, truncated to `method_len - 1` bytes and NUL-terminated.
 */
enum MadcapStatus madcap_channel_capacity(const struct MadcapChannel *channel,
                                          enum MadcapQuantity quantity,
                                          struct MadcapEstimate *out,
                                          char *method,
                                          size_t method_len);

/**
 * New channel equal to `outer ∘ inner` (`inner` acts first).
 */
enum MadcapStatus madcap_compose_rates(const struct MadcapChannel *outer,
                                       const struct MadcapChannel *inner,
                                       struct MadcapChannel **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MADCAP_H */
