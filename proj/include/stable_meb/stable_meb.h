/* C interface to the stable_meb library.
 *
 * Objects are opaque handles created and released through this API. Every
 * fallible call returns an smeb_status; on failure smeb_last_error() holds a
 * message for the calling thread until its next failing call.
 */
#ifndef STABLE_MEB_H
#define STABLE_MEB_H

#include <stddef.h>
#include <stdint.h>

#if defined(SMEB_BUILDING_LIBRARY)
#define SMEB_API __attribute__((visibility("default")))
#else
#define SMEB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smeb_status {
  SMEB_OK = 0,
  SMEB_ERR_NULL = 1,     /* required pointer argument was NULL */
  SMEB_ERR_CONTRACT = 2, /* precondition violated (bad index, shape, ...) */
  SMEB_ERR_CONFIG = 3,   /* parameter outside its admissible range */
  SMEB_ERR_IO = 4,       /* file missing, unreadable or malformed */
  SMEB_ERR_ALLOC = 5,
  SMEB_ERR_INTERNAL = 6
} smeb_status;

typedef struct smeb_dataset smeb_dataset;
typedef struct smeb_result smeb_result;

typedef struct smeb_algo_config {
  double epsilon;
  double beta;
  double eta;
  double eta0;
  double s;
  double c_net;
  double c_hit;
} smeb_algo_config;

typedef struct smeb_outlier_config {
  double gamma;
  double beta;
  double epsilon;
  double eta;
  double c_out;
} smeb_outlier_config;

typedef struct smeb_instance_spec {
  const char* family; /* uniform-ball, gaussian, regular-simplex, planted-outliers */
  size_t n;
  size_t d;
  double gamma;
  double outlier_spread;
  uint64_t seed;
} smeb_instance_spec;

typedef struct smeb_plan {
  const char* algorithm; /* coreset, alg1, quick, alg2, outlier */
  smeb_algo_config cfg;
  smeb_outlier_config outlier_cfg;
  size_t trials;
  uint64_t base_seed;
  const char* reference; /* none, coreset-highprec, ground-truth, brute-force */
  size_t threads;
} smeb_plan;

typedef struct smeb_eval_options {
  int has_ratio_bound;
  double ratio_bound;
  int has_threshold;
  double threshold;
  double z;
} smeb_eval_options;

SMEB_API const char* smeb_last_error(void);
SMEB_API const char* smeb_status_name(smeb_status status);
SMEB_API const char* smeb_version(void);

SMEB_API void smeb_algo_config_default(smeb_algo_config* cfg);
SMEB_API void smeb_outlier_config_default(smeb_outlier_config* cfg);
SMEB_API void smeb_instance_spec_default(smeb_instance_spec* spec);
SMEB_API void smeb_plan_default(smeb_plan* plan);
SMEB_API void smeb_eval_options_default(smeb_eval_options* options);

/* Datasets. A dataset loaded from a file remembers its path so reference
 * radii can be cached in the sidecar next to it. */
SMEB_API smeb_status smeb_dataset_load(const char* path, smeb_dataset** out);
SMEB_API smeb_status smeb_dataset_from_rows(const double* data, size_t n, size_t d,
                                            smeb_dataset** out);
SMEB_API smeb_status smeb_dataset_generate(const smeb_instance_spec* spec, smeb_dataset** out);
/* Writes the binary file and its sidecar (spec and inliers when known). */
SMEB_API smeb_status smeb_dataset_save(smeb_dataset* dataset, const char* path);
SMEB_API void smeb_dataset_free(smeb_dataset* dataset);
SMEB_API size_t smeb_dataset_n(const smeb_dataset* dataset);
SMEB_API size_t smeb_dataset_d(const smeb_dataset* dataset);
SMEB_API smeb_status smeb_dataset_row(const smeb_dataset* dataset, size_t i, double* out);
/* Number of known inlier rows, 0 when the dataset carries none. */
SMEB_API size_t smeb_dataset_inlier_count(const smeb_dataset* dataset);

/* Reference radius for the plan's algorithm (the outlier algorithm uses the
 * outlier-aware variant). Cached in the sidecar for file-backed datasets. */
SMEB_API smeb_status smeb_reference_radius(smeb_dataset* dataset, const smeb_plan* plan,
                                           double* out);

/* Runs every trial of the plan, resolving the reference radius first. */
SMEB_API smeb_status smeb_run(smeb_dataset* dataset, const smeb_plan* plan, smeb_result** out);
SMEB_API size_t smeb_result_count(const smeb_result* result);
/* JSON line for trial i, owned by the result. */
SMEB_API const char* smeb_result_report_json(const smeb_result* result, size_t i);
SMEB_API double smeb_result_radius(const smeb_result* result, size_t i);
SMEB_API void smeb_result_free(smeb_result* result);

/* Evaluates JSON-lines text. *summary_json is released with smeb_string_free;
 * *table receives a human-readable table (also freed with smeb_string_free).
 * *all_pass is 1 iff every criterion passed. */
SMEB_API smeb_status smeb_evaluate_jsonl(const char* text, const smeb_eval_options* options,
                                         char** summary_json, char** table, int* all_pass);
SMEB_API void smeb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* STABLE_MEB_H */
