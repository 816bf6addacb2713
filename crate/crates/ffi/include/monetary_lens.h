#ifndef MONETARY_LENS_H
#define MONETARY_LENS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  ML_STATUS_OK = 0,
  ML_STATUS_NULL_POINTER = 1,
  ML_STATUS_INVALID_ARGUMENT = 2,
  ML_STATUS_MISSING_PERIOD = 3,
  ML_STATUS_DEGENERATE_BASE = 4,
  ML_STATUS_DOMAIN = 5,
  ML_STATUS_UNKNOWN_GOOD = 6,
  ML_STATUS_FLOW_SHIFT = 7,
  ML_STATUS_ALIGNMENT = 8,
  ML_STATUS_CURRENCY = 9,
  ML_STATUS_SPLICE = 10,
  ML_STATUS_UNKNOWN_SERIES = 11,
  ML_STATUS_IO = 12,
  ML_STATUS_PARSE = 13,
  ML_STATUS_MANIFEST = 14,
  ML_STATUS_OUT_OF_RANGE = 15,
  ML_STATUS_PANIC = 99,
} MlStatus;

/**
 * Opaque economy handle.
 */
typedef struct MlEconomy MlEconomy;

/**
 * Opaque time-series handle.
 */
typedef struct MlSeries MlSeries;

/**
 * Aggregates of one simulated period.
 */
typedef struct {
  double money_stock;
  double velocity;
  double goods_side;
  double price_level;
  double transaction_count;
  double gdp;
  size_t ledger_len;
} MlSummary;

/**
 * A normalized debt row. `alt_*` fields are meaningful only when
 * `has_alt` is true.
 */
typedef struct {
  double normalized_end;
  double pct_change;
  bool has_alt;
  double alt_normalized_end;
  double alt_pct_change;
} MlDebtRow;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null if none. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *ml_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *ml_version(void);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
MlStatus ml_economy_fisher(MlEconomy **out);

/**
 * Loads an economy description file.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` a valid handle slot.
 */
MlStatus ml_economy_load(const char *path, MlEconomy **out);

/**
 * # Safety
 * `e` must be null or a handle returned by this library and not yet freed.
 */
void ml_economy_free(MlEconomy *e);

/**
 * # Safety
 * `e` must be a live economy handle; `out` a valid handle slot.
 */
MlStatus ml_economy_scale_production(const MlEconomy *e, double k, MlEconomy **out);

/**
 * # Safety
 * `e` must be a live economy handle, `from`/`to` NUL-terminated strings,
 * `out` a valid handle slot.
 */
MlStatus ml_economy_shift_flows(const MlEconomy *e,
                                const char *from,
                                const char *to,
                                uint32_t count,
                                MlEconomy **out);

/**
 * Solved unit price of one good.
 *
 * # Safety
 * `e` must be a live economy handle, `good` a NUL-terminated string and
 * `out` writable.
 */
MlStatus ml_economy_price(const MlEconomy *e, const char *good, double *out);

/**
 * Runs one period and fills `out` with its aggregates.
 *
 * # Safety
 * `e` must be a live economy handle and `out` writable.
 */
MlStatus ml_economy_summarize(const MlEconomy *e, MlSummary *out);

/**
 * Builds a series from parallel arrays of `len` years and values.
 *
 * # Safety
 * `label` and `currency` must be NUL-terminated strings; `years` and
 * `values` must point to `len` readable elements (or may be null when `len`
 * is zero); `out` must be a valid handle slot.
 */
MlStatus ml_series_new(const char *label,
                       const char *currency,
                       double unit_scale,
                       const int32_t *years,
                       const double *values,
                       size_t len,
                       MlSeries **out);

/**
 * Loads a `year,value` CSV file.
 *
 * # Safety
 * String arguments must be NUL-terminated; `out` a valid handle slot.
 */
MlStatus ml_series_load(const char *path,
                        const char *label,
                        const char *currency,
                        double unit_scale,
                        MlSeries **out);

/**
 * # Safety
 * `s` must be null or a handle returned by this library and not yet freed.
 */
void ml_series_free(MlSeries *s);

/**
 * Number of points, or 0 for a null handle.
 *
 * # Safety
 * `s` must be null or a live series handle.
 */
size_t ml_series_len(const MlSeries *s);

/**
 * # Safety
 * `s` must be a live series handle; `year` and `value` writable.
 */
MlStatus ml_series_point(const MlSeries *s, size_t index, int32_t *year, double *value);

/**
 * `s[to] / s[from]`.
 *
 * # Safety
 * `s` must be a live series handle and `out` writable.
 */
MlStatus ml_series_growth_multiplier(const MlSeries *s, int32_t from, int32_t to, double *out);

/**
 * Normalizes `raw` by the growth of `money` since `base`; the result is a new
 * series over the periods both inputs cover.
 *
 * # Safety
 * `raw` and `money` must be live series handles; `out` a valid handle slot.
 */
MlStatus ml_normalize(const MlSeries *raw, const MlSeries *money, int32_t base, MlSeries **out);

/**
 * Debt at the end of a window deflated by a money-supply multiplier.
 * `alt_multiplier` may be null.
 *
 * # Safety
 * `alt_multiplier` must be null or readable; `out` writable.
 */
MlStatus ml_normalize_debt_row(double debt_start,
                               double debt_end,
                               double multiplier,
                               const double *alt_multiplier,
                               MlDebtRow *out);

/**
 * `consumption + investment + government + (exports - imports)`.
 */
double ml_gdp_expenditure(double consumption,
                          double investment,
                          double government,
                          double exports,
                          double imports);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MONETARY_LENS_H */
