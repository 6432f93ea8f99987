/*
 * vtex C API.
 *
 * Every function returns a vtex_status; on failure vtex_last_error() holds a
 * message for the calling thread until its next failing call. Objects are
 * opaque handles released with their matching *_free function, which
 * accepts NULL.
 */
#ifndef VTEX_VTEX_H
#define VTEX_VTEX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(VTEX_BUILDING_LIBRARY)
#    define VTEX_API __declspec(dllexport)
#  else
#    define VTEX_API __declspec(dllimport)
#  endif
#else
#  define VTEX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values double as CLI exit codes. */
typedef enum vtex_status {
  VTEX_OK = 0,
  VTEX_ERR_INVALID_ARGUMENT = 1,
  VTEX_ERR_MISSING_INPUT = 2,
  VTEX_ERR_DIMENSION_MISMATCH = 3,
  VTEX_ERR_DECODE_FAILURE = 4,
  VTEX_ERR_TOO_FEW_FRAMES = 5,
  VTEX_ERR_ENCODE_FAILURE = 6,
  VTEX_ERR_IO_FAILURE = 7,
  VTEX_ERR_NON_FINITE_ENTRY = 8,
  VTEX_ERR_DEGENERATE_HISTOGRAM = 9,
  VTEX_ERR_INVALID_BOUNDS = 10,
  VTEX_ERR_MISSING_CLUSTERING = 11,
  VTEX_ERR_MATRIX_TOO_SMALL = 12,
  VTEX_ERR_ALL_ZERO_DISTANCES = 13,
  VTEX_ERR_NON_POSITIVE_SIGMA_MULTIPLE = 14,
  VTEX_ERR_FRAME_TOO_SMALL = 15,
  VTEX_ERR_INVALID_K = 16,
  VTEX_ERR_EMPTY_INPUT = 17,
  VTEX_ERR_INDEX_OUT_OF_RANGE = 18,
  VTEX_ERR_NO_FEASIBLE_LOOP = 19,
  VTEX_ERR_INSUFFICIENT_CLUSTERS = 20,
  VTEX_ERR_EMPTY_CLUSTER = 21,
  VTEX_ERR_INVALID_N = 22,
  VTEX_ERR_CACHE_MISS = 23,
  VTEX_ERR_INTERNAL = 24
} vtex_status;

typedef enum vtex_metric {
  VTEX_METRIC_SSD = 0,
  VTEX_METRIC_CHEBYSHEV = 1
} vtex_metric;

typedef struct vtex_sequence vtex_sequence;
typedef struct vtex_matrix vtex_matrix;
typedef struct vtex_config vtex_config;

typedef struct vtex_sequence_info {
  size_t frame_count;
  uint32_t width;
  uint32_t height;
  uint32_t channels;
  uint32_t frame_delay_ms;
} vtex_sequence_info;

typedef struct vtex_animation_info {
  size_t frame_count;
  uint32_t width;
  uint32_t height;
  uint32_t channels;
  uint32_t frame_delay_ms;
  int loop_forever;
} vtex_animation_info;

typedef struct vtex_loop {
  size_t start;
  size_t end;
  size_t length;
  double cut_cost;
} vtex_loop;

VTEX_API const char* vtex_version(void);
VTEX_API const char* vtex_last_error(void);
VTEX_API const char* vtex_status_name(vtex_status status);

/* Frame sequences. `path` is a directory of PNG stills or a GIF file. */
VTEX_API vtex_status vtex_sequence_load(const char* path, vtex_sequence** out);
/* Builds a sequence from `frame_count` frames packed back to back. */
VTEX_API vtex_status vtex_sequence_from_pixels(const uint8_t* samples, size_t frame_count,
                                               uint32_t width, uint32_t height,
                                               uint32_t channels, uint32_t frame_delay_ms,
                                               vtex_sequence** out);
VTEX_API vtex_status vtex_sequence_info_get(const vtex_sequence* seq, vtex_sequence_info* out);
/* Copies one frame's samples into `buffer` (capacity in bytes). */
VTEX_API vtex_status vtex_sequence_copy_frame(const vtex_sequence* seq, size_t index,
                                              uint8_t* buffer, size_t capacity);
VTEX_API vtex_status vtex_sequence_write_gif(const vtex_sequence* seq, const char* path,
                                             int loop_forever);
VTEX_API vtex_status vtex_sequence_normalize(const vtex_sequence* seq, double low_pct,
                                             double high_pct, vtex_sequence** out);
VTEX_API void vtex_sequence_free(vtex_sequence* seq);

VTEX_API vtex_status vtex_animation_probe(const char* path, vtex_animation_info* out);

/* Matrices: distance matrices at any stage, and transition probabilities. */
VTEX_API vtex_status vtex_matrix_create(size_t rows, size_t cols, const double* values,
                                        vtex_matrix** out);
VTEX_API vtex_status vtex_matrix_shape(const vtex_matrix* m, size_t* rows, size_t* cols);
VTEX_API vtex_status vtex_matrix_copy_values(const vtex_matrix* m, double* buffer,
                                             size_t capacity);
VTEX_API vtex_status vtex_matrix_crop_offset(const vtex_matrix* m, size_t* out);
VTEX_API vtex_status vtex_matrix_render_heatmap(const vtex_matrix* m, const char* path);
VTEX_API void vtex_matrix_free(vtex_matrix* m);

VTEX_API vtex_status vtex_distance_matrix(const vtex_sequence* seq, vtex_metric metric,
                                          vtex_matrix** out);
/* taps is 2 or 4; the input must be a raw matrix. */
VTEX_API vtex_status vtex_preserve_dynamics(const vtex_matrix* raw, int taps, vtex_matrix** out);
VTEX_API vtex_status vtex_future_shift(const vtex_matrix* d, vtex_matrix** out);
/* `sigma_out` may be NULL. */
VTEX_API vtex_status vtex_probability_matrix(const vtex_matrix* d, double sigma_multiple,
                                             vtex_matrix** out, double* sigma_out);
VTEX_API vtex_status vtex_find_loop(const vtex_matrix* shifted, size_t min_length,
                                    double prune_frac, vtex_loop* out);

/* Pipeline configuration, keyed like the config file. */
VTEX_API vtex_status vtex_config_create(vtex_config** out);
VTEX_API void vtex_config_free(vtex_config* cfg);
VTEX_API vtex_status vtex_config_set(vtex_config* cfg, const char* key, const char* value);
/* Writes a NUL-terminated value; `required` (may be NULL) receives the size
 * needed including the terminator. */
VTEX_API vtex_status vtex_config_get(const vtex_config* cfg, const char* key, char* buffer,
                                     size_t capacity, size_t* required);
VTEX_API vtex_status vtex_config_load_file(vtex_config* cfg, const char* path);
VTEX_API vtex_status vtex_config_save_file(const vtex_config* cfg, const char* path);
VTEX_API size_t vtex_config_key_count(void);
VTEX_API const char* vtex_config_key_name(size_t index);
VTEX_API const char* vtex_config_key_help(size_t index);

VTEX_API vtex_status vtex_run_analyze(const vtex_config* cfg);
VTEX_API vtex_status vtex_run_synthesize(const vtex_config* cfg);
VTEX_API vtex_status vtex_run_visualize(const vtex_config* cfg);

#ifdef __cplusplus
}
#endif

#endif /* VTEX_VTEX_H */
