#ifndef GENBOOST_H
#define GENBOOST_H

/* Generated by cbindgen from genboost-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum {
  GB_STATUS_OK = 0,
  GB_STATUS_NULL_POINTER = 1,
  GB_STATUS_INVALID_ARGUMENT = 2,
  GB_STATUS_IO_ERROR = 3,
  GB_STATUS_TRAIN_ERROR = 4,
} GbStatus;

/**
 * Opaque dataset handle.
 */
typedef struct GbDataset GbDataset;

/**
 * Opaque trained-model handle.
 */
typedef struct GbModel GbModel;

/**
 * Genetic learner parameters. Mirrors the CLI defaults when constructed
 * with `gb_genetic_params_default`.
 */
typedef struct {
  uint64_t restarts_s;
  uint64_t population_n;
  uint64_t generations_kmax;
  double crossover_rate;
  double mutation_rate;
  uint64_t seed;
} GbGeneticParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message for the current thread into `buf` as a
 * NUL-terminated string, truncating if needed. Returns the full message
 * length in bytes, excluding the terminator. `buf` may be null when only
 * the length is wanted.
 */
uintptr_t gb_last_error_message(char *buf, uintptr_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *gb_version(void);

/**
 * Loads a dataset from a manifest file. On success writes a fresh handle
 * to `out`.
 */
GbStatus gb_dataset_load(const char *manifest_path, GbDataset **out);

/**
 * Generates a synthetic dataset on disk (images plus manifest) and loads
 * it into a fresh handle.
 */
GbStatus gb_dataset_generate(const char *out_dir,
                             uint64_t count,
                             uint64_t window,
                             uint64_t seed,
                             double difficulty,
                             GbDataset **out);

void gb_dataset_free(GbDataset *dataset);

/**
 * Number of samples, or 0 for a null handle.
 */
uintptr_t gb_dataset_len(const GbDataset *dataset);

GbStatus gb_dataset_window(const GbDataset *dataset, uint32_t *width_out, uint32_t *height_out);

GbGeneticParams gb_genetic_params_default(void);

/**
 * Trains with the exhaustive weak learner.
 */
GbStatus gb_train_exhaustive(const GbDataset *dataset, uint32_t rounds, GbModel **out);

/**
 * Trains with the genetic weak learner.
 */
GbStatus gb_train_genetic(const GbDataset *dataset,
                          uint32_t rounds,
                          const GbGeneticParams *params,
                          GbModel **out);

void gb_model_free(GbModel *model);

/**
 * Stage count, or 0 for a null handle.
 */
uintptr_t gb_model_stages(const GbModel *model);

GbStatus gb_model_save(const GbModel *model, const char *path);

GbStatus gb_model_load(const char *path, GbModel **out);

/**
 * Classifies one window given as `width * height` row-major 8-bit pixels.
 * Writes +1 or -1 to `label_out`.
 */
GbStatus gb_model_predict(const GbModel *model,
                          const uint8_t *pixels,
                          uint32_t width,
                          uint32_t height,
                          int32_t *label_out);

/**
 * Classification error of the model on a dataset, in [0, 1].
 */
GbStatus gb_model_error(const GbModel *model, const GbDataset *dataset, double *error_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GENBOOST_H */
