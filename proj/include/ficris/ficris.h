// SPDX-License-Identifier: Apache-2.0
//
// ficris: iterative configuration of reconfigurable intelligent surfaces
// Copyright (C) 2026 The ficris authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

/*
 * C interface to the ficris library.
 *
 * Every function returns a ficris_status. On failure the message for the
 * calling thread is available from ficris_last_error() until the next call.
 * Handles are opaque and owned by the caller; release them with the matching
 * *_free function (NULL is accepted).
 */

#ifndef FICRIS_H
#define FICRIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define FICRIS_API __declspec(dllexport)
#else
#  define FICRIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ficris_status
{
    FICRIS_OK = 0,
    FICRIS_ERR_INVALID_ARGUMENT = 1,
    FICRIS_ERR_IO = 2,
    FICRIS_ERR_NOT_REACHED = 3,
    FICRIS_ERR_INTERNAL = 4
} ficris_status;

typedef struct ficris_campaign ficris_campaign;
typedef struct ficris_report ficris_report;
typedef struct ficris_link ficris_link;

FICRIS_API const char *ficris_last_error(void);
FICRIS_API const char *ficris_status_string(ficris_status status);
FICRIS_API const char *ficris_version(void);

/* ---- campaigns ---- */

FICRIS_API ficris_status ficris_campaign_load(const char *path, ficris_campaign **out);
FICRIS_API ficris_status ficris_campaign_parse(const char *text, ficris_campaign **out);
FICRIS_API void ficris_campaign_free(ficris_campaign *campaign);

/* Overrides; pass NULL / 0 to leave a field unchanged. */
FICRIS_API ficris_status ficris_campaign_set_output(ficris_campaign *campaign, const char *path);
FICRIS_API ficris_status ficris_campaign_set_trials(ficris_campaign *campaign, size_t trials);
FICRIS_API ficris_status ficris_campaign_set_threads(ficris_campaign *campaign, size_t threads);

/* Runs the campaign and writes the CSV to the configured output path (if any).
 * cache_dir may be NULL; see ficris_resolve_cache_dir. *out may be NULL. */
FICRIS_API ficris_status ficris_campaign_run(const ficris_campaign *campaign, const char *cache_dir, ficris_report **out);

/* Computes and stores C_opt for every trial. Counts may be NULL. */
FICRIS_API ficris_status ficris_campaign_prewarm_oracle(const ficris_campaign *campaign, const char *cache_dir,
                                                        size_t *computed, size_t *reused);

/* Writes the effective cache directory (explicit, FICRIS_CACHE_DIR, then the
 * config's cache_dir) into buf. Empty string when none applies. */
FICRIS_API ficris_status ficris_resolve_cache_dir(const ficris_campaign *campaign, const char *explicit_dir, char *buf,
                                                  size_t buf_len);

/* ---- reports ---- */

typedef struct ficris_report_row
{
    const char *method;   /* "FIC" or "BAS"; valid while the report lives */
    const char *schedule; /* full schedule of the curve, e.g. "64-36-9x24"; see iterations */
    unsigned k;
    size_t starts;
    size_t iterations;
    double t;
    double mean_eps;
    double std_eps;
    double negative_fraction;
    size_t trials;
} ficris_report_row;

typedef struct ficris_comparison
{
    int fic_reached;
    int bas_reached;
    double t_fic;
    double t_bas;
    double reduction_percent; /* valid when both reached */
} ficris_comparison;

FICRIS_API ficris_status ficris_report_load(const char *path, ficris_report **out);
FICRIS_API ficris_status ficris_report_save(const ficris_report *report, const char *path);
FICRIS_API size_t ficris_report_num_rows(const ficris_report *report);
FICRIS_API ficris_status ficris_report_row_at(const ficris_report *report, size_t index, ficris_report_row *out);

/* Returns FICRIS_ERR_NOT_REACHED (with *out filled) when either method never
 * reaches target_eps. */
FICRIS_API ficris_status ficris_report_compare(const ficris_report *report, double target_eps, ficris_comparison *out);
FICRIS_API void ficris_report_free(ficris_report *report);

/* ---- single links ---- */

typedef struct ficris_fic_summary
{
    double true_rate;           /* achievable rate of the returned configuration */
    double best_estimated_rate;
    size_t total_estimates;
    size_t blocks;
} ficris_fic_summary;

/* Samples the channel pair the campaign uses for trial index `trial`. */
FICRIS_API ficris_status ficris_link_sample(const ficris_campaign *campaign, uint64_t trial, ficris_link **out);
FICRIS_API void ficris_link_free(ficris_link *link);

/* Runs FIC over the campaign's number of blocks. A single grid size gives BAS. */
FICRIS_API ficris_status ficris_link_run_fic(ficris_link *link, const size_t *sizes, size_t num_sizes, size_t starts,
                                             unsigned k, uint64_t noise_seed, ficris_fic_summary *out);
FICRIS_API ficris_status ficris_link_oracle(const ficris_link *link, double *c_opt);

/* CSV exports of the last ficris_link_run_fic call and of the channel paths.
 * which_paths: 'G' or 'H'. */
FICRIS_API ficris_status ficris_link_write_trace_csv(const ficris_link *link, const char *path);
FICRIS_API ficris_status ficris_link_write_config_csv(const ficris_link *link, const char *path);
FICRIS_API ficris_status ficris_link_write_paths_csv(const ficris_link *link, char which_paths, const char *path);

/* ---- formulas ---- */

/* T_0 * M * (L_1 + P * sum_{i>=2} L_i) */
FICRIS_API ficris_status ficris_estimation_time(double t0, size_t num_blocks, const size_t *sizes, size_t num_sizes,
                                                size_t starts, double *out);

FICRIS_API ficris_status ficris_rate_loss(double c_opt, double c_hat, double *out);

#ifdef __cplusplus
}
#endif

#endif
