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

// Command-line front end. Talks to the library only through the C interface.

#include "ficris/ficris.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{
    struct Failure
    {
        ficris_status status;
    };

    void check(ficris_status s)
    {
        if (s != FICRIS_OK)
            throw Failure{s};
    }

    struct CampaignDeleter
    {
        void operator()(ficris_campaign *c) const { ficris_campaign_free(c); }
    };
    struct ReportDeleter
    {
        void operator()(ficris_report *r) const { ficris_report_free(r); }
    };
    struct LinkDeleter
    {
        void operator()(ficris_link *l) const { ficris_link_free(l); }
    };
    using CampaignPtr = std::unique_ptr<ficris_campaign, CampaignDeleter>;
    using ReportPtr = std::unique_ptr<ficris_report, ReportDeleter>;
    using LinkPtr = std::unique_ptr<ficris_link, LinkDeleter>;

    CampaignPtr load_campaign(const std::string &path)
    {
        ficris_campaign *c = nullptr;
        check(ficris_campaign_load(path.c_str(), &c));
        return CampaignPtr(c);
    }

    const char *opt_cstr(const std::string &s)
    {
        return s.empty() ? nullptr : s.c_str();
    }

    // "64,36,9x3" -> {64, 36, 9, 9, 9}
    std::vector<size_t> parse_sizes(const std::string &text)
    {
        std::vector<size_t> out;
        std::string norm = text;
        std::replace(norm.begin(), norm.end(), '-', ',');
        std::stringstream ss(norm);
        for (std::string tok; std::getline(ss, tok, ',');)
        {
            if (tok.empty())
                continue;
            auto x = tok.find('x');
            size_t size = std::stoul(tok.substr(0, x));
            size_t count = x == std::string::npos ? 1 : std::stoul(tok.substr(x + 1));
            out.insert(out.end(), count, size);
        }
        return out;
    }

    int cmd_run(const std::string &config, const std::string &output, size_t trials, size_t threads,
                const std::string &cache_dir)
    {
        auto c = load_campaign(config);
        check(ficris_campaign_set_output(c.get(), opt_cstr(output)));
        check(ficris_campaign_set_trials(c.get(), trials));
        if (threads)
            check(ficris_campaign_set_threads(c.get(), threads));
        ficris_report *raw = nullptr;
        check(ficris_campaign_run(c.get(), opt_cstr(cache_dir), &raw));
        ReportPtr report(raw);
        std::cout << "rows: " << ficris_report_num_rows(report.get()) << "\n";
        return 0;
    }

    int cmd_compare(const std::string &path, std::optional<double> target, std::optional<double> margin)
    {
        ficris_report *raw = nullptr;
        check(ficris_report_load(path.c_str(), &raw));
        ReportPtr report(raw);

        if (!target)
        {
            std::optional<double> best_fic, best_bas;
            for (size_t i = 0; i < ficris_report_num_rows(report.get()); ++i)
            {
                ficris_report_row row{};
                check(ficris_report_row_at(report.get(), i, &row));
                auto &slot = std::string(row.method) == "FIC" ? best_fic : best_bas;
                if (!slot || row.mean_eps < *slot)
                    slot = row.mean_eps;
            }
            if (!best_fic || !best_bas)
            {
                std::cerr << "error: report must contain both FIC and BAS rows\n";
                return 1;
            }
            target = std::max(*best_fic, *best_bas) + margin.value_or(0.02);
        }

        ficris_comparison cmp{};
        ficris_status s = ficris_report_compare(report.get(), *target, &cmp);
        if (s != FICRIS_OK && s != FICRIS_ERR_NOT_REACHED)
            throw Failure{s};
        std::printf("target_eps=%.6g\n", *target);
        if (cmp.fic_reached)
            std::printf("t_fic=%.6g\n", cmp.t_fic);
        else
            std::printf("t_fic=not-reached\n");
        if (cmp.bas_reached)
            std::printf("t_bas=%.6g\n", cmp.t_bas);
        else
            std::printf("t_bas=not-reached\n");
        if (s == FICRIS_OK)
            std::printf("reduction_percent=%.4f\n", cmp.reduction_percent);
        else
            std::printf("reduction_percent=not-reached\n");
        return 0;
    }

    int cmd_oracle_cache(const std::string &config, const std::string &cache_dir, size_t trials, size_t threads)
    {
        auto c = load_campaign(config);
        check(ficris_campaign_set_trials(c.get(), trials));
        if (threads)
            check(ficris_campaign_set_threads(c.get(), threads));
        size_t computed = 0, reused = 0;
        check(ficris_campaign_prewarm_oracle(c.get(), opt_cstr(cache_dir), &computed, &reused));
        char dir[4096];
        check(ficris_resolve_cache_dir(c.get(), opt_cstr(cache_dir), dir, sizeof dir));
        std::cout << "cache: " << dir << "\ncomputed: " << computed << "\nreused: " << reused << "\n";
        return 0;
    }

    int cmd_probe(const std::string &config, uint64_t trial, const std::string &schedule, size_t starts, unsigned k,
                  uint64_t noise_seed, const std::string &out_dir, bool with_oracle)
    {
        auto c = load_campaign(config);
        ficris_link *raw = nullptr;
        check(ficris_link_sample(c.get(), trial, &raw));
        LinkPtr link(raw);

        auto sizes = parse_sizes(schedule);
        ficris_fic_summary summary{};
        check(ficris_link_run_fic(link.get(), sizes.data(), sizes.size(), starts, k, noise_seed, &summary));
        std::printf("blocks=%zu\nT=%zu\nbest_estimated_rate=%.6f\ntrue_rate=%.6f\n", summary.blocks,
                    summary.total_estimates, summary.best_estimated_rate, summary.true_rate);
        if (with_oracle)
        {
            double c_opt = 0.0, eps = 0.0;
            check(ficris_link_oracle(link.get(), &c_opt));
            check(ficris_rate_loss(c_opt, summary.true_rate, &eps));
            std::printf("c_opt=%.6f\neps=%.6f\n", c_opt, eps);
        }
        if (!out_dir.empty())
        {
            std::filesystem::create_directories(out_dir);
            auto file = [&](const char *name) { return (std::filesystem::path(out_dir) / name).string(); };
            check(ficris_link_write_paths_csv(link.get(), 'G', file("paths_g.csv").c_str()));
            check(ficris_link_write_paths_csv(link.get(), 'H', file("paths_h.csv").c_str()));
            check(ficris_link_write_trace_csv(link.get(), file("trace.csv").c_str()));
            check(ficris_link_write_config_csv(link.get(), file("config.csv").c_str()));
        }
        return 0;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Iterative RIS configuration simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ficris_version());

    std::string config, output, cache_dir, report, schedule = "9x6", out_dir;
    size_t trials = 0, threads = 0, starts = 1;
    unsigned k = 1;
    uint64_t trial = 0, noise_seed = 1;
    std::optional<double> target, margin;
    bool with_oracle = false;

    auto *run = app.add_subcommand("run", "Run a Monte Carlo campaign and write the CSV report");
    run->add_option("config", config, "Campaign config file")->required()->check(CLI::ExistingFile);
    run->add_option("-o,--output", output, "Report path (overrides 'output' in the config)");
    run->add_option("-n,--trials", trials, "Number of trials (overrides the config)");
    run->add_option("-j,--threads", threads, "Worker threads, 0 = all cores");
    run->add_option("--cache-dir", cache_dir, "Oracle cache directory (overrides FICRIS_CACHE_DIR)");

    auto *cmp = app.add_subcommand("compare", "FIC vs BAS estimation-time reduction from a report");
    cmp->add_option("report", report, "Campaign CSV report")->required()->check(CLI::ExistingFile);
    cmp->add_option("-t,--target", target, "Target mean epsilon");
    cmp->add_option("--margin", margin,
                    "Without --target: use max(min eps FIC, min eps BAS) + margin (default 0.02)");

    auto *oc = app.add_subcommand("oracle-cache", "Compute and store C_opt for every trial of a campaign");
    oc->add_option("config", config, "Campaign config file")->required()->check(CLI::ExistingFile);
    oc->add_option("--cache-dir", cache_dir, "Cache directory (overrides FICRIS_CACHE_DIR and cache_dir)");
    oc->add_option("-n,--trials", trials, "Number of trials (overrides the config)");
    oc->add_option("-j,--threads", threads, "Worker threads, 0 = all cores");

    auto *probe = app.add_subcommand("probe", "Run FIC on one sampled channel and export its CSVs");
    probe->add_option("config", config, "Campaign config file")->required()->check(CLI::ExistingFile);
    probe->add_option("--trial", trial, "Trial index whose channel is used");
    probe->add_option("-s,--schedule", schedule, "Grid sizes, e.g. 64,36,9x4")->capture_default_str();
    probe->add_option("-P,--starts", starts, "Starting points")->capture_default_str();
    probe->add_option("-K,--estimates", k, "Channel estimates per configuration")->capture_default_str();
    probe->add_option("--noise-seed", noise_seed, "Seed of the estimation noise")->capture_default_str();
    probe->add_option("--out-dir", out_dir, "Directory for paths/trace/config CSVs");
    probe->add_flag("--oracle", with_oracle, "Also compute C_opt and epsilon");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 1; // help and --version exit 0
    }

    try
    {
        if (*run)
            return cmd_run(config, output, trials, threads, cache_dir);
        if (*cmp)
            return cmd_compare(report, target, margin);
        if (*oc)
            return cmd_oracle_cache(config, cache_dir, trials, threads);
        if (*probe)
            return cmd_probe(config, trial, schedule, starts, k, noise_seed, out_dir, with_oracle);
    }
    catch (const Failure &f)
    {
        std::cerr << "error (" << ficris_status_string(f.status) << "): " << ficris_last_error() << "\n";
        return 1 + static_cast<int>(f.status);
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
