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

/* Exercises the C interface from plain C: handles, error codes, outputs. */

#include "ficris/ficris.h"

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/stat.h>

static int failures = 0;

#define CHECK(cond)                                                                                                    \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
        {                                                                                                              \
            fprintf(stderr, "%s:%d: CHECK(%s) failed; last error: %s\n", __FILE__, __LINE__, #cond,                   \
                    ficris_last_error());                                                                              \
            ++failures;                                                                                                \
        }                                                                                                              \
    } while (0)

static const char *config_text = "ris_elements = 24\n"
                                 "blocks = 3\n"
                                 "snr_db = -15\n"
                                 "schedule = 16,9\n"
                                 "bas_sizes = 9,16\n"
                                 "methods = fic,bas\n"
                                 "oracle_resolution = 32\n"
                                 "oracle_refine_rounds = 1\n"
                                 "trials = 3\n"
                                 "base_seed = 4\n";

static long file_size(const char *path)
{
    struct stat st;
    return stat(path, &st) == 0 ? (long)st.st_size : -1;
}

int main(int argc, char **argv)
{
    const char *work = argc > 1 ? argv[1] : ".";
    char out_csv[1024], cache[1024], trace[1024], buf[1024];
    snprintf(out_csv, sizeof out_csv, "%s/report.csv", work);
    snprintf(cache, sizeof cache, "%s/cache", work);
    snprintf(trace, sizeof trace, "%s/trace.csv", work);
    mkdir(work, 0755);

    CHECK(strcmp(ficris_version(), "1.0.0") == 0);
    CHECK(strcmp(ficris_status_string(FICRIS_ERR_IO), "") != 0);

    /* formulas */
    size_t sizes[] = {9, 9, 9, 9};
    double t = 0.0;
    CHECK(ficris_estimation_time(1.0, 3, sizes, 4, 1, &t) == FICRIS_OK && t == 108.0);
    size_t bad_sizes[] = {10};
    CHECK(ficris_estimation_time(1.0, 1, bad_sizes, 1, 1, &t) == FICRIS_ERR_INVALID_ARGUMENT);
    CHECK(strlen(ficris_last_error()) > 0);
    double eps = 0.0;
    CHECK(ficris_rate_loss(4.0, 3.0, &eps) == FICRIS_OK && eps == 0.25);
    CHECK(ficris_rate_loss(0.0, 3.0, &eps) == FICRIS_ERR_INVALID_ARGUMENT);

    /* campaign handles */
    ficris_campaign *c = NULL;
    CHECK(ficris_campaign_parse("schedule = 10\n", &c) == FICRIS_ERR_INVALID_ARGUMENT && c == NULL);
    CHECK(ficris_campaign_load("/nonexistent/x.cfg", &c) == FICRIS_ERR_IO && c == NULL);
    CHECK(ficris_campaign_parse(NULL, &c) == FICRIS_ERR_INVALID_ARGUMENT);
    CHECK(ficris_campaign_parse(config_text, &c) == FICRIS_OK && c != NULL);
    CHECK(ficris_campaign_set_output(c, out_csv) == FICRIS_OK);
    CHECK(ficris_campaign_set_threads(c, 2) == FICRIS_OK);

    CHECK(ficris_resolve_cache_dir(c, cache, buf, sizeof buf) == FICRIS_OK && strcmp(buf, cache) == 0);
    CHECK(ficris_resolve_cache_dir(c, cache, buf, 3) == FICRIS_ERR_INVALID_ARGUMENT);

    size_t computed = 0, reused = 0;
    CHECK(ficris_campaign_prewarm_oracle(c, cache, &computed, &reused) == FICRIS_OK && computed + reused == 3);
    CHECK(ficris_campaign_prewarm_oracle(c, cache, &computed, &reused) == FICRIS_OK && computed == 0 && reused == 3);

    ficris_report *r = NULL;
    CHECK(ficris_campaign_run(c, cache, &r) == FICRIS_OK && r != NULL);
    CHECK(file_size(out_csv) > 0);
    CHECK(ficris_report_num_rows(r) == 4);
    ficris_report_row row;
    CHECK(ficris_report_row_at(r, 0, &row) == FICRIS_OK);
    CHECK(strcmp(row.method, "FIC") == 0 && row.trials == 3 && row.t == 48.0);
    CHECK(ficris_report_row_at(r, 4, &row) == FICRIS_ERR_INVALID_ARGUMENT);

    ficris_comparison cmp;
    CHECK(ficris_report_compare(r, -1.0, &cmp) == FICRIS_ERR_NOT_REACHED && !cmp.fic_reached && !cmp.bas_reached);
    CHECK(ficris_report_compare(r, 1.0, &cmp) == FICRIS_OK && cmp.fic_reached && cmp.bas_reached);

    ficris_report *loaded = NULL;
    CHECK(ficris_report_load(out_csv, &loaded) == FICRIS_OK && ficris_report_num_rows(loaded) == 4);
    CHECK(ficris_report_load("/nonexistent/r.csv", &loaded) == FICRIS_ERR_IO);
    CHECK(ficris_report_save(r, "/nonexistent/r.csv") == FICRIS_ERR_IO);

    /* single link */
    ficris_link *link = NULL;
    CHECK(ficris_link_sample(c, 0, &link) == FICRIS_OK && link != NULL);
    ficris_fic_summary s;
    size_t sched[] = {16, 9, 9};
    CHECK(ficris_link_run_fic(link, sched, 3, 2, 2, 7, &s) == FICRIS_OK);
    CHECK(s.blocks == 3 && s.total_estimates == 2 * 3 * (16 + 2 * 18));
    double c_opt = 0.0;
    CHECK(ficris_link_oracle(link, &c_opt) == FICRIS_OK && c_opt > 0.0);
    CHECK(ficris_link_run_fic(link, sched, 3, 20, 1, 7, &s) == FICRIS_ERR_INVALID_ARGUMENT);
    CHECK(ficris_link_write_trace_csv(link, trace) == FICRIS_OK && file_size(trace) > 0);
    CHECK(ficris_link_write_paths_csv(link, 'X', trace) == FICRIS_ERR_INVALID_ARGUMENT);

    ficris_link_free(link);
    ficris_report_free(loaded);
    ficris_report_free(r);
    ficris_campaign_free(c);
    ficris_campaign_free(NULL);
    ficris_report_free(NULL);
    ficris_link_free(NULL);

    if (failures)
        fprintf(stderr, "%d check(s) failed\n", failures);
    else
        printf("all C API checks passed\n");
    return failures ? 1 : 0;
}
