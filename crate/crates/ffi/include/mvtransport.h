#ifndef MVTRANSPORT_H
#define MVTRANSPORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum MvtStatus {
  MVT_STATUS_OK = 0,
  MVT_STATUS_NULL_POINTER = 1,
  MVT_STATUS_INVALID_INPUT = 2,
  MVT_STATUS_PARSE = 3,
  MVT_STATUS_OUT_OF_RANGE = 4,
  MVT_STATUS_MISALIGNED_FIELDS = 5,
  MVT_STATUS_SINGULAR = 6,
  MVT_STATUS_IO = 7,
  MVT_STATUS_PANIC = 8,
} MvtStatus;

/**
 * Material parameters.
 */
typedef struct MvtParams MvtParams;

/**
 * Concentration against voltage table.
 */
typedef struct MvtTable MvtTable;

/**
 * Longitudinal magnetoresistance summary at one field point.
 */
typedef struct MvtReport {
  double j0;
  /**
   * Valley-summed first-order current, lab frame.
   */
  double j1_total[3];
  double dj2;
  double ratio;
  double ratio_analytic;
  double ratio_simplified;
  double j_exact;
  double ratio_exact;
  double omega_tau;
  bool weak_field_violated;
} MvtReport;

/**
 * Drift velocity of one valley, lab frame, cm/s.
 */
typedef struct MvtDrift {
  double u0[3];
  double u1[3];
  double u2[3];
  double u_exact[3];
  double omega_tau;
  double series_parameter;
  bool weak_field_violated;
} MvtDrift;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message on this thread, or NULL if none. Valid until the next
 * failing call on the same thread.
 */
const char *mvt_last_error(void);

/**
 * Converts a field in V/cm to statvolt/cm.
 *
 * # Safety
 * `out_statvolt` must be NULL or point to writable memory.
 */
enum MvtStatus mvt_volts_per_cm_to_statvolt(double e_vpcm, double *out_statvolt);

/**
 * New handle holding the default n-Ge parameters.
 */
struct MvtParams *mvt_params_new_ge(void);

/**
 * Validated parameters in grams, seconds and cm^-3.
 *
 * # Safety
 * `out_params` must be NULL or point to writable memory. On success it
 * receives a handle to release with [`mvt_params_free`].
 */
enum MvtStatus mvt_params_new(double m_perp_g,
                              double m_par_g,
                              double tau_perp_s,
                              double tau_par_s,
                              double n_total_cm3,
                              size_t n_valleys,
                              struct MvtParams **out_params);

/**
 * # Safety
 * `params` must be NULL or a handle from this library not yet freed.
 */
void mvt_params_free(struct MvtParams *params);

/**
 * Magnetoresistance with E and H along the symmetric axis (0,0,1).
 * Negative values denote antiparallel fields.
 *
 * # Safety
 * `params` must be a live handle and `out_report` writable.
 */
enum MvtStatus mvt_magnetoresistance(const struct MvtParams *params,
                                     double e_statvolt_cm,
                                     double h_oe,
                                     struct MvtReport *out_report);

/**
 * Series and exact drift of valley `valley_index` (0..4) for arbitrary
 * E (statvolt/cm) and H (Oe), each given as three doubles.
 *
 * # Safety
 * `params` must be a live handle, `e` and `h` must point to three doubles
 * each, and `out_drift` must be writable.
 */
enum MvtStatus mvt_drift(const struct MvtParams *params,
                         size_t valley_index,
                         const double *e,
                         const double *h,
                         struct MvtDrift *out_drift);

/**
 * Handle holding the bundled n-Ge concentration table.
 */
struct MvtTable *mvt_table_bundled(void);

/**
 * Loads a two-column voltage/concentration file.
 *
 * # Safety
 * `path` must be NULL or a NUL-terminated UTF-8 string, and `out_table`
 * writable. On success it receives a handle for [`mvt_table_free`].
 */
enum MvtStatus mvt_table_load(const char *path, struct MvtTable **out_table);

/**
 * # Safety
 * `table` must be NULL or a handle from this library not yet freed.
 */
void mvt_table_free(struct MvtTable *table);

/**
 * Number of rows in the table, 0 for NULL.
 *
 * # Safety
 * `table` must be NULL or a live handle.
 */
size_t mvt_table_len(const struct MvtTable *table);

/**
 * Concentration in cm^-3 at `voltage`, log-linear between rows.
 *
 * # Safety
 * `table` must be a live handle and `out_n_cm3` writable.
 */
enum MvtStatus mvt_table_interpolate(const struct MvtTable *table,
                                     double voltage,
                                     double *out_n_cm3);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MVTRANSPORT_H */
