/*
 * Copyright (c) 2026, riskmeans contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * riskmeans C API.
 *
 * Every object is an opaque handle created by an rm_*_new / rm_*_load / producer call and
 * released with the matching rm_*_free. Functions return an rm_status; on failure the
 * message for the calling thread is available from rm_last_error() until the next call on
 * that thread. Strings returned by accessors stay owned by the handle and live until it is
 * freed. Distinct handles may be used from different threads concurrently.
 */
#ifndef RISKMEANS_H
#define RISKMEANS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(RISKMEANS_BUILD)
#    define RM_API __declspec(dllexport)
#  else
#    define RM_API __declspec(dllimport)
#  endif
#else
#  define RM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rm_status {
    RM_OK = 0,
    RM_ERR_IO = 1,       /* file missing or unreadable */
    RM_ERR_PARSE = 2,    /* malformed config, schema or document */
    RM_ERR_SCHEMA = 3,   /* header does not match the schema */
    RM_ERR_DATA = 4,     /* bad cell contents */
    RM_ERR_ARGUMENT = 5, /* violated precondition on an argument */
    RM_ERR_STATE = 6,    /* object used before it was ready */
    RM_ERR_NUMERIC = 7,  /* non-finite input */
    RM_ERR_INTERNAL = 8
} rm_status;

typedef struct rm_config rm_config;
typedef struct rm_dataset rm_dataset;
typedef struct rm_model rm_model;
typedef struct rm_report rm_report;

RM_API const char* rm_version(void);
RM_API const char* rm_last_error(void);
RM_API const char* rm_status_name(rm_status status);

/* ---- experiment configuration ---------------------------------------------------------- */

RM_API rm_status rm_config_new(rm_config** out);
RM_API rm_status rm_config_load(const char* path, rm_config** out);
/* Relative paths in `value` resolve against the current directory. */
RM_API rm_status rm_config_set(rm_config* cfg, const char* section, const char* key, const char* value);
RM_API rm_status rm_config_get(const rm_config* cfg, const char* section, const char* key, const char** value);
RM_API const char* rm_config_fingerprint(const rm_config* cfg);
RM_API void rm_config_free(rm_config* cfg);

/* ---- datasets -------------------------------------------------------------------------- */

RM_API rm_status rm_dataset_load(const char* data_path, const char* schema_path, rm_dataset** out);
/* Loads [data] path + schema from the config. */
RM_API rm_status rm_dataset_load_config(const rm_config* cfg, rm_dataset** out);
RM_API rm_status rm_dataset_info(const rm_dataset* ds, size_t* n, size_t* d, size_t* positives);
/* `seed` is a root seed; the draw matches the pipeline's own subsampling stage. */
RM_API rm_status rm_dataset_subsample(const rm_dataset* ds, size_t per_class, uint64_t seed, rm_dataset** out);
/* Imputes, encodes and optionally standardizes ([preprocess] in cfg) the whole dataset,
 * writing the processed matrix (delimited text with header) and the preprocessing report
 * (structured text). Both carry the config fingerprint and seed. */
RM_API rm_status rm_dataset_preprocess(const rm_dataset* ds, const rm_config* cfg, const char* matrix_path,
                                       const char* report_path);
RM_API void rm_dataset_free(rm_dataset* ds);

/* ---- models ---------------------------------------------------------------------------- */

/* Preprocess, optional RFE, and a cluster classifier fitted on the whole dataset. */
RM_API rm_status rm_train(const rm_dataset* ds, const rm_config* cfg, rm_model** out);
RM_API rm_status rm_model_save(const rm_model* model, const char* path);
RM_API rm_status rm_model_load(const char* path, rm_model** out);
RM_API rm_status rm_model_info(const rm_model* model, size_t* k, size_t* d);
/* `x` is a point in model space (after preprocessing and selection). */
RM_API rm_status rm_model_predict(const rm_model* model, const double* x, size_t d, double* score, int* label);
/* Scores raw dataset rows through the stored preprocessing and selection. `scores` holds n. */
RM_API rm_status rm_model_score_dataset(const rm_model* model, const rm_dataset* ds, double* scores, size_t n);
RM_API const char* rm_model_json(const rm_model* model);
RM_API void rm_model_free(rm_model* model);

/* ---- experiments ----------------------------------------------------------------------- */

/* Comma-separated list of valid method names. */
RM_API const char* rm_method_names(void);
RM_API rm_status rm_check_method(const char* method);

RM_API rm_status rm_run(const rm_dataset* ds, const rm_config* cfg, const char* method, rm_report** out);
RM_API rm_status rm_compare(const rm_dataset* ds, const rm_config* cfg, const char* const* methods, size_t count,
                            rm_report** out);
RM_API rm_status rm_select_features(const rm_dataset* ds, const rm_config* cfg, rm_report** out);
/* Fits the multi-granularity scanner from [scanner] on the preprocessed dataset and
 * transforms every row. One delimited file per window size. */
RM_API rm_status rm_scan(const rm_dataset* ds, const rm_config* cfg, rm_report** out);

RM_API const char* rm_report_json(const rm_report* report);
RM_API const char* rm_report_text(const rm_report* report);
/* Writes <stem>.json, <stem>.txt and any data files into `dir` (created if needed). ROC
 * point files are written only when emit_plot_data is non-zero. Delimited files start with
 * one "# config=<fingerprint> seed=<seed>" line. */
RM_API rm_status rm_report_write(const rm_report* report, const char* dir, int emit_plot_data);
RM_API size_t rm_report_file_count(const rm_report* report);
RM_API const char* rm_report_file_name(const rm_report* report, size_t index);
RM_API void rm_report_free(rm_report* report);

/* ---- primitives ------------------------------------------------------------------------ */

RM_API rm_status rm_window_count(size_t length, size_t window, size_t stride, size_t* out);
RM_API rm_status rm_auc(const double* scores, const int* labels, size_t n, double* out);
RM_API rm_status rm_brier_binary(const double* p, const int* labels, size_t n, double* out);
/* Row-major n x d points; centroids_out holds k x d. */
RM_API rm_status rm_kmeans_fit(const double* points, size_t n, size_t d, size_t k, size_t restarts, uint64_t seed,
                               double* centroids_out, double* wcss_out);

#ifdef __cplusplus
}
#endif

#endif /* RISKMEANS_H */
