#ifndef GPGROUP_H
#define GPGROUP_H

#pragma once

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

typedef enum GpgStatus {
  GPG_STATUS_OK = 0,
  GPG_STATUS_NULL_POINTER = 1,
  GPG_STATUS_INVALID_ARGUMENT = 2,
  GPG_STATUS_INVALID_CONFIG = 3,
  GPG_STATUS_RUNTIME = 4,
  GPG_STATUS_BUFFER_TOO_SMALL = 5,
  GPG_STATUS_PANIC = 6,
} GpgStatus;

/*
 Experiment settings. Opaque.
 */
typedef struct GpgConfig GpgConfig;

/*
 Results of a finished experiment. Opaque.
 */
typedef struct GpgExperiment GpgExperiment;

/*
 Cross-run mean and sample SD for one generation.
 */
typedef struct GpgAggregateRow {
  size_t generation;
  double best_fitness_mean;
  double best_fitness_sd;
  double avg_fitness_mean;
  double avg_fitness_sd;
  double avg_size_mean;
  double avg_size_sd;
  double avg_duration_mean;
} GpgAggregateRow;

/*
 Statistics of one generation of one run.
 */
typedef struct GpgGenerationStats {
  size_t generation;
  uint32_t best_fitness;
  double avg_fitness;
  double avg_size;
  double avg_duration;
  size_t max_size;
} GpgGenerationStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *gpg_version(void);

/*
 Message for the last failed call on this thread ("" after a success).
 Valid until the next call into this library from the same thread.
 */
const char *gpg_last_error(void);

/*
 New config holding the library defaults. `bits` should be set before
 running. Release with `gpg_config_free`.
 */
struct GpgConfig *gpg_config_new(void);

/*
 # Safety
 `config` must be NULL or a handle from `gpg_config_new` not yet freed.
 */
void gpg_config_free(struct GpgConfig *config);

/*
 Sets one setting using the CLI key names (`bits`, `pop`, `gens`,
 `groups`, `runs`, `seed`, `timer`, `workers`, `tournament`, `xo-prob`,
 `max-depth`, `elitism`, `init-min-depth`, `init-max-depth`).

 # Safety
 `config` must be a live handle; `key` and `value` NUL-terminated strings.
 */
enum GpgStatus gpg_config_set(struct GpgConfig *config, const char *key, const char *value);

/*
 # Safety
 `config` must be a live handle.
 */
enum GpgStatus gpg_config_validate(const struct GpgConfig *config);

/*
 Runs every replicate of `config` and stores a new result handle in
 `*out`. Release it with `gpg_experiment_free`.

 # Safety
 `config` must be a live handle and `out` a writable pointer.
 */
enum GpgStatus gpg_run_experiment(const struct GpgConfig *config, struct GpgExperiment **out);

/*
 # Safety
 `experiment` must be NULL or a handle from `gpg_run_experiment`.
 */
void gpg_experiment_free(struct GpgExperiment *experiment);

/*
 Number of aggregate rows (generations + 1); 0 for NULL.

 # Safety
 `experiment` must be NULL or a live handle.
 */
size_t gpg_experiment_generation_count(const struct GpgExperiment *experiment);

/*
 Number of runs; 0 for NULL.

 # Safety
 `experiment` must be NULL or a live handle.
 */
size_t gpg_experiment_run_count(const struct GpgExperiment *experiment);

/*
 # Safety
 `experiment` must be a live handle and `out` writable.
 */
enum GpgStatus gpg_experiment_row(const struct GpgExperiment *experiment,
                                  size_t index,
                                  struct GpgAggregateRow *out);

/*
 Per-run statistics for generation `generation` of run `run`.

 # Safety
 `experiment` must be a live handle and `out` writable.
 */
enum GpgStatus gpg_experiment_run_stats(const struct GpgExperiment *experiment,
                                        size_t run,
                                        size_t generation,
                                        struct GpgGenerationStats *out);

/*
 Writes the aggregate CSV, NUL-terminated, into `buf`. `*needed` receives
 the byte length including the terminator; when `capacity` is smaller the
 call returns `GPG_STATUS_BUFFER_TOO_SMALL` and writes nothing. `buf` may be
 NULL when `capacity` is 0.

 # Safety
 `buf` must be writable for `capacity` bytes; `needed` must be writable.
 */
enum GpgStatus gpg_experiment_csv(const struct GpgExperiment *experiment,
                                  char *buf,
                                  size_t capacity,
                                  size_t *needed);

/*
 Scores an S-expression program such as `(and x0 (nor x1 x2))` on the
 `num_bits` even-parity table. `out_cost` (may be NULL) receives the
 cost-model duration, `size × 2^num_bits`.

 # Safety
 `program` must be a NUL-terminated string and `out_fitness` writable.
 */
enum GpgStatus gpg_evaluate_program(const char *program,
                                    uint32_t num_bits,
                                    uint32_t *out_fitness,
                                    uint64_t *out_cost);

/*
 Groups `n` items by duration into `groups` equal-cardinality groups and
 writes each item's group index to `out_group_of[0..n]`.

 # Safety
 `durations` must be readable and `out_group_of` writable for `n` items.
 */
enum GpgStatus gpg_partition_by_duration(const uint64_t *durations,
                                         size_t n,
                                         size_t groups,
                                         size_t *out_group_of);

/*
 Makespan of longest-first greedy dispatch of `n` durations onto
 `workers` identical workers.

 # Safety
 `durations` must be readable for `n` items (may be NULL when `n` is 0).
 */
enum GpgStatus gpg_schedule_makespan(const uint64_t *durations,
                                     size_t n,
                                     size_t workers,
                                     uint64_t *out_makespan);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GPGROUP_H */
