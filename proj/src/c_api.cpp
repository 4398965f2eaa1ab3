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

#include "ficris/ficris.h"

#include "ficris/campaign.hpp"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

struct ficris_campaign
{
    ficris::CampaignConfig config;
};

struct ficris_report
{
    ficris::CampaignReport report;
    std::vector<std::string> method_names;
};

struct ficris_link
{
    ficris::CampaignConfig config;
    ficris::ChannelPair paths;
    ficris::CascadeLink link;
    std::optional<ficris::FicResult> last;
};

namespace
{
    thread_local std::string last_error;

    template <typename Fn>
    ficris_status guarded(Fn &&fn)
    {
        try
        {
            last_error.clear();
            return fn();
        }
        catch (const std::invalid_argument &e)
        {
            last_error = e.what();
            return FICRIS_ERR_INVALID_ARGUMENT;
        }
        catch (const std::out_of_range &e)
        {
            last_error = e.what();
            return FICRIS_ERR_INVALID_ARGUMENT;
        }
        catch (const std::filesystem::filesystem_error &e)
        {
            last_error = e.what();
            return FICRIS_ERR_IO;
        }
        catch (const std::runtime_error &e)
        {
            last_error = e.what();
            return FICRIS_ERR_IO;
        }
        catch (const std::bad_alloc &)
        {
            last_error = "out of memory";
            return FICRIS_ERR_INTERNAL;
        }
        catch (const std::exception &e)
        {
            last_error = e.what();
            return FICRIS_ERR_INTERNAL;
        }
        catch (...)
        {
            last_error = "unknown error";
            return FICRIS_ERR_INTERNAL;
        }
    }

    void require(const void *p, const char *what)
    {
        if (!p)
            throw std::invalid_argument(std::string(what) + " is NULL");
    }

    ficris::GridSchedule schedule_from(const size_t *sizes, size_t num_sizes, size_t starts)
    {
        require(sizes, "sizes");
        ficris::GridSchedule s{std::vector<std::size_t>(sizes, sizes + num_sizes), starts};
        s.validate();
        return s;
    }

    ficris_report *wrap_report(ficris::CampaignReport r)
    {
        auto *h = new ficris_report{std::move(r), {}};
        for (const auto &row : h->report.rows)
            h->method_names.emplace_back(ficris::method_name(row.method));
        return h;
    }

    template <typename Fn>
    void write_file(const char *path, Fn &&fn)
    {
        require(path, "path");
        std::ofstream os(path, std::ios::trunc);
        if (!os)
            throw std::runtime_error(std::string("cannot write ") + path);
        fn(os);
        if (!os)
            throw std::runtime_error(std::string("write failed for ") + path);
    }

    std::optional<ficris::OracleCache> cache_for(const ficris::CampaignConfig &config, const char *cache_dir)
    {
        auto dir = ficris::resolve_cache_dir(cache_dir ? cache_dir : "", &config);
        if (dir.empty())
            return std::nullopt;
        return ficris::OracleCache(dir);
    }
}

extern "C" {

const char *ficris_last_error(void)
{
    return last_error.c_str();
}

const char *ficris_status_string(ficris_status status)
{
    switch (status)
    {
    case FICRIS_OK:
        return "ok";
    case FICRIS_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case FICRIS_ERR_IO:
        return "i/o error";
    case FICRIS_ERR_NOT_REACHED:
        return "target not reached";
    case FICRIS_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *ficris_version(void)
{
    return "1.0.0";
}

ficris_status ficris_campaign_load(const char *path, ficris_campaign **out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new ficris_campaign{ficris::CampaignConfig::load(path)};
        return FICRIS_OK;
    });
}

ficris_status ficris_campaign_parse(const char *text, ficris_campaign **out)
{
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        *out = new ficris_campaign{ficris::CampaignConfig::from_text(text)};
        return FICRIS_OK;
    });
}

void ficris_campaign_free(ficris_campaign *campaign)
{
    delete campaign;
}

ficris_status ficris_campaign_set_output(ficris_campaign *campaign, const char *path)
{
    return guarded([&] {
        require(campaign, "campaign");
        if (path)
            campaign->config.output_path = path;
        return FICRIS_OK;
    });
}

ficris_status ficris_campaign_set_trials(ficris_campaign *campaign, size_t trials)
{
    return guarded([&] {
        require(campaign, "campaign");
        if (trials)
            campaign->config.trials = trials;
        return FICRIS_OK;
    });
}

ficris_status ficris_campaign_set_threads(ficris_campaign *campaign, size_t threads)
{
    return guarded([&] {
        require(campaign, "campaign");
        campaign->config.threads = threads;
        return FICRIS_OK;
    });
}

ficris_status ficris_campaign_run(const ficris_campaign *campaign, const char *cache_dir, ficris_report **out)
{
    return guarded([&] {
        require(campaign, "campaign");
        auto cache = cache_for(campaign->config, cache_dir);
        auto report = ficris::run_campaign(campaign->config, cache ? &*cache : nullptr);
        if (out)
            *out = wrap_report(std::move(report));
        return FICRIS_OK;
    });
}

ficris_status ficris_campaign_prewarm_oracle(const ficris_campaign *campaign, const char *cache_dir, size_t *computed,
                                             size_t *reused)
{
    return guarded([&] {
        require(campaign, "campaign");
        auto cache = cache_for(campaign->config, cache_dir);
        if (!cache)
            throw std::invalid_argument("no cache directory given (argument, FICRIS_CACHE_DIR or cache_dir)");
        auto stats = ficris::prewarm_oracle_cache(campaign->config, *cache);
        if (computed)
            *computed = stats.computed;
        if (reused)
            *reused = stats.reused;
        return FICRIS_OK;
    });
}

ficris_status ficris_resolve_cache_dir(const ficris_campaign *campaign, const char *explicit_dir, char *buf,
                                       size_t buf_len)
{
    return guarded([&] {
        require(buf, "buf");
        auto dir = ficris::resolve_cache_dir(explicit_dir ? explicit_dir : "", campaign ? &campaign->config : nullptr);
        if (dir.size() + 1 > buf_len)
            throw std::invalid_argument("buffer too small for cache directory");
        std::memcpy(buf, dir.c_str(), dir.size() + 1);
        return FICRIS_OK;
    });
}

ficris_status ficris_report_load(const char *path, ficris_report **out)
{
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = wrap_report(ficris::CampaignReport::load(path));
        return FICRIS_OK;
    });
}

ficris_status ficris_report_save(const ficris_report *report, const char *path)
{
    return guarded([&] {
        require(report, "report");
        require(path, "path");
        report->report.save(path);
        return FICRIS_OK;
    });
}

size_t ficris_report_num_rows(const ficris_report *report)
{
    return report ? report->report.rows.size() : 0;
}

ficris_status ficris_report_row_at(const ficris_report *report, size_t index, ficris_report_row *out)
{
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        if (index >= report->report.rows.size())
            throw std::out_of_range("row index out of range");
        const auto &r = report->report.rows[index];
        *out = ficris_report_row{report->method_names[index].c_str(),
                                 r.schedule.c_str(),
                                 r.k,
                                 r.starts,
                                 r.iterations,
                                 r.t,
                                 r.mean_eps,
                                 r.std_eps,
                                 r.negative_fraction,
                                 r.trials};
        return FICRIS_OK;
    });
}

ficris_status ficris_report_compare(const ficris_report *report, double target_eps, ficris_comparison *out)
{
    return guarded([&] {
        require(report, "report");
        require(out, "out");
        auto c = ficris::compare_fic_bas(report->report, target_eps);
        *out = ficris_comparison{c.t_fic ? 1 : 0, c.t_bas ? 1 : 0, c.t_fic.value_or(0.0), c.t_bas.value_or(0.0),
                                 c.reduction_percent.value_or(0.0)};
        if (!c.reduction_percent)
        {
            last_error = "target epsilon not reached by both methods";
            return FICRIS_ERR_NOT_REACHED;
        }
        return FICRIS_OK;
    });
}

void ficris_report_free(ficris_report *report)
{
    delete report;
}

ficris_status ficris_link_sample(const ficris_campaign *campaign, uint64_t trial, ficris_link **out)
{
    return guarded([&] {
        require(campaign, "campaign");
        require(out, "out");
        const auto &c = campaign->config;
        auto paths = ficris::campaign_trial_paths(c, trial);
        auto link = ficris::CascadeLink::from_paths(c.scenario, paths);
        *out = new ficris_link{c, std::move(paths), std::move(link), std::nullopt};
        return FICRIS_OK;
    });
}

void ficris_link_free(ficris_link *link)
{
    delete link;
}

ficris_status ficris_link_run_fic(ficris_link *link, const size_t *sizes, size_t num_sizes, size_t starts, unsigned k,
                                  uint64_t noise_seed, ficris_fic_summary *out)
{
    return guarded([&] {
        require(link, "link");
        auto schedule = schedule_from(sizes, num_sizes, starts);
        const auto m = link->config.blocks();
        auto r = ficris::run_multipath(link->link, m, schedule, link->config.noise_model(k),
                                       ficris::NoiseStream{noise_seed});
        if (out)
            *out = ficris_fic_summary{
                ficris::achievable_rate(ficris::compose_cascade(link->link.h, r.best_config, link->link.g),
                                        link->config.sigma_sq),
                r.best_estimated_rate, r.total_estimates, m};
        link->last = std::move(r);
        return FICRIS_OK;
    });
}

ficris_status ficris_link_oracle(const ficris_link *link, double *c_opt)
{
    return guarded([&] {
        require(link, "link");
        require(c_opt, "c_opt");
        *c_opt = ficris::oracle_optimal_rate(link->link, link->config.blocks(), link->config.oracle,
                                             link->config.sigma_sq)
                     .c_opt;
        return FICRIS_OK;
    });
}

ficris_status ficris_link_write_trace_csv(const ficris_link *link, const char *path)
{
    return guarded([&] {
        require(link, "link");
        if (!link->last)
            throw std::invalid_argument("no FIC run on this link yet");
        write_file(path, [&](std::ostream &os) { ficris::write_trace_csv(os, *link->last); });
        return FICRIS_OK;
    });
}

ficris_status ficris_link_write_config_csv(const ficris_link *link, const char *path)
{
    return guarded([&] {
        require(link, "link");
        if (!link->last)
            throw std::invalid_argument("no FIC run on this link yet");
        write_file(path, [&](std::ostream &os) { ficris::write_config_csv(os, link->last->best_config); });
        return FICRIS_OK;
    });
}

ficris_status ficris_link_write_paths_csv(const ficris_link *link, char which_paths, const char *path)
{
    return guarded([&] {
        require(link, "link");
        if (which_paths != 'G' && which_paths != 'H')
            throw std::invalid_argument("which_paths must be 'G' or 'H'");
        write_file(path, [&](std::ostream &os) {
            ficris::write_paths_csv(os, which_paths == 'G' ? link->paths.g : link->paths.h);
        });
        return FICRIS_OK;
    });
}

ficris_status ficris_estimation_time(double t0, size_t num_blocks, const size_t *sizes, size_t num_sizes,
                                     size_t starts, double *out)
{
    return guarded([&] {
        require(out, "out");
        if (!(t0 > 0.0) || num_blocks < 1)
            throw std::invalid_argument("t0 and num_blocks must be positive");
        *out = ficris::estimation_time(t0, num_blocks, schedule_from(sizes, num_sizes, starts));
        return FICRIS_OK;
    });
}

ficris_status ficris_rate_loss(double c_opt, double c_hat, double *out)
{
    return guarded([&] {
        require(out, "out");
        *out = ficris::rate_loss(c_opt, c_hat);
        return FICRIS_OK;
    });
}

} // extern "C"
