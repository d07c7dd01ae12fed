/*
 Copyright 2026 The gainfn Authors
 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

/*
 C interface to the gainfn decision engine.

 Ranks candidate architectures for a shared set of applications from measured
 execution times, acquisition costs, and application / criteria weights (set
 explicitly or derived from pairwise judgments).

 Conventions:
  - Every object is an opaque handle released with its matching *_free.
    Passing NULL to a *_free function is a no-op.
  - Functions that can fail return a gf_status. On failure, if `error` is
    non-NULL, *error receives a gf_error handle the caller must free.
  - Strings returned by accessors are owned by the handle and stay valid
    until it is freed. All strings are UTF-8 and NUL-terminated.
  - Handles are immutable after creation and may be shared between threads.
*/

#ifndef GAINFN_GAINFN_H
#define GAINFN_GAINFN_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(GAINFN_BUILDING)
#define GF_API __declspec(dllexport)
#else
#define GF_API __declspec(dllimport)
#endif
#else
#define GF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gf_status
{
    GF_OK = 0,
    GF_ERR_ARGUMENT = 1,  /* NULL handle, bad enum value, or other API misuse */
    GF_ERR_SCHEMA = 2,    /* malformed JSON/CSV or a document of the wrong shape */
    GF_ERR_INVALID = 3,   /* well-formed input that breaks a domain rule */
    GF_ERR_NOT_FOUND = 4, /* reference to an unknown application or architecture */
    GF_ERR_INTERNAL = 5
} gf_status;

typedef enum gf_format
{
    GF_FORMAT_JSON = 0,
    GF_FORMAT_TABLE = 1
} gf_format;

typedef struct gf_options gf_options;
typedef struct gf_problem gf_problem;
typedef struct gf_report gf_report;
typedef struct gf_output gf_output;
typedef struct gf_error gf_error;

GF_API const char* gf_version(void);
GF_API const char* gf_status_name(gf_status status);

/* Errors */
GF_API gf_status   gf_error_status(const gf_error* error);
GF_API const char* gf_error_message(const gf_error* error);
/* Location of the offending element, e.g. "measurements[2].mean"; may be "". */
GF_API const char* gf_error_path(const gf_error* error);
GF_API void        gf_error_free(gf_error* error);

/* Load options; NULL means defaults everywhere an options pointer is taken. */
GF_API gf_options* gf_options_new(void);
GF_API void        gf_options_free(gf_options* options);
/* Rescale application weights that do not sum to 1 instead of rejecting. */
GF_API gf_status   gf_options_set_renormalize(gf_options* options, int enabled);
/* Two-sided confidence level for aggregated runs, in (0, 1). Default 0.95. */
GF_API gf_status   gf_options_set_ci_level(gf_options* options, double level);
/* Relative CI half-width above which a warning is raised. Default 0.01. */
GF_API gf_status   gf_options_set_ci_threshold(gf_options* options, double threshold);

/* Problems */
/* `runs_csv` may be NULL; otherwise raw samples with header
   "application,architecture,seconds". */
GF_API gf_status gf_problem_load(const char* document_json, const char* runs_csv, const gf_options* options,
                                 gf_problem** problem, gf_error** error);
GF_API void      gf_problem_free(gf_problem* problem);

GF_API size_t      gf_problem_application_count(const gf_problem* problem);
GF_API const char* gf_problem_application_id(const gf_problem* problem, size_t index);
GF_API double      gf_problem_application_weight(const gf_problem* problem, size_t index);
GF_API size_t      gf_problem_architecture_count(const gf_problem* problem);
GF_API const char* gf_problem_architecture_id(const gf_problem* problem, size_t index);
GF_API double      gf_problem_architecture_cost(const gf_problem* problem, size_t index);
GF_API double      gf_problem_time(const gf_problem* problem, size_t application, size_t architecture);
GF_API double      gf_problem_cost_weight(const gf_problem* problem);
GF_API size_t      gf_problem_warning_count(const gf_problem* problem);
GF_API const char* gf_problem_warning(const gf_problem* problem, size_t index);
/* Canonical problem document (explicit weights, mean times). */
GF_API gf_status   gf_problem_serialize(const gf_problem* problem, gf_output** output, gf_error** error);

/* Gain evaluation */
GF_API gf_status gf_evaluate(const gf_problem* problem, gf_report** report, gf_error** error);
GF_API void      gf_report_free(gf_report* report);

/* Gains are indexed in problem order (architectures sorted by id). */
GF_API size_t      gf_report_architecture_count(const gf_report* report);
GF_API double      gf_report_gain(const gf_report* report, size_t architecture);
/* Architecture id at a position of the ranking (0 = winner). */
GF_API const char* gf_report_ranked(const gf_report* report, size_t position);
GF_API const char* gf_report_winner(const gf_report* report);
/* Non-zero when the winner's gain is tied with another architecture. */
GF_API int         gf_report_winner_tied(const gf_report* report);
GF_API gf_status   gf_report_render(const gf_report* report, gf_format format, gf_output** output, gf_error** error);

/* One-shot commands rendering straight to text */
/* `judgments_json`: {"items": [...], "judgments": [{"more_important", "less_important", "intensity"}]} */
GF_API gf_status gf_weights(const char* judgments_json, gf_format format, gf_output** output, gf_error** error);
GF_API gf_status gf_crossovers(const gf_problem* problem, gf_format format, gf_output** output, gf_error** error);
/* `scenarios_json`: {"scenarios": [{"label", "application_weights": {id: w}, "criteria": {...}}]} */
GF_API gf_status gf_scenarios(const gf_problem* problem, const char* scenarios_json, gf_format format,
                              gf_output** output, gf_error** error);
GF_API gf_status gf_sweep(const gf_problem* problem, const char* application, const double* grid, size_t grid_size,
                          gf_format format, gf_output** output, gf_error** error);
GF_API gf_status gf_breakeven(const gf_problem* problem, const char* architecture, gf_format format,
                              gf_output** output, gf_error** error);

/* Output text */
GF_API const char* gf_output_text(const gf_output* output);
GF_API size_t      gf_output_size(const gf_output* output);
GF_API size_t      gf_output_warning_count(const gf_output* output);
GF_API const char* gf_output_warning(const gf_output* output, size_t index);
GF_API void        gf_output_free(gf_output* output);

#ifdef __cplusplus
}
#endif

#endif
