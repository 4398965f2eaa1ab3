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

#ifndef FICRIS_CAMPAIGN_HPP
#define FICRIS_CAMPAIGN_HPP

#include "ficris/reference_search.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ficris
{
    enum class Method
    {
        fic,
        bas
    };

    const char *method_name(Method method);
    Method method_from_name(const std::string &name);

    struct CampaignConfig
    {
        ChannelScenario scenario;
        double sigma_sq = sigma_sq_from_snr_db(-15.0);
        double est_noise_sigma_sq = sigma_sq_from_snr_db(-15.0);
        std::vector<unsigned> k_values{1};
        std::size_t num_blocks = 0; // 0 selects min(L_G, L_H)
        std::vector<GridSchedule> schedules;
        std::vector<std::size_t> bas_sizes;
        std::vector<Method> methods{Method::fic};
        OracleSpec oracle;
        std::size_t trials = 100;
        std::uint64_t base_seed = 1;
        std::string output_path;
        std::string cache_dir;
        std::size_t threads = 0; // 0 = hardware concurrency

        std::size_t blocks() const;
        bool uses(Method method) const;
        NoiseModel noise_model(unsigned k) const;
        void validate() const;

        static CampaignConfig from_text(const std::string &text);
        static CampaignConfig load(const std::filesystem::path &path);
        std::string to_text() const;
    };

    // One point of a (T, epsilon) curve.
    struct ReportRow
    {
        Method method = Method::fic;
        std::string schedule; // full schedule of the curve; this row runs its first `iterations` sizes
        unsigned k = 1;
        std::size_t starts = 1;
        std::size_t iterations = 1;
        double t = 0.0;
        double mean_eps = 0.0;
        double std_eps = 0.0;
        double negative_fraction = 0.0;
        std::size_t trials = 0;
    };

    struct CampaignReport
    {
        std::vector<ReportRow> rows;

        // Header: method,schedule,K,P,I,T,mean_eps,std_eps,neg_frac,trials
        void write_csv(std::ostream &os) const;
        void save(const std::filesystem::path &path) const;
        static CampaignReport read_csv(std::istream &is);
        static CampaignReport load(const std::filesystem::path &path);
    };

    // Per-trial epsilon samples behind every report row, in row order.
    struct CampaignSamples
    {
        std::vector<std::vector<double>> eps;
        std::vector<double> c_opt; // per trial
    };

    // Channel paths of one campaign trial. Every cell of the trial shares them.
    ChannelPair campaign_trial_paths(const CampaignConfig &config, std::size_t trial);

    // Runs every (method, schedule, K, I) cell over all trials. A non-null
    // cache is used for C_opt; otherwise the config's cache_dir (or the
    // FICRIS_CACHE_DIR environment variable) is used when set.
    CampaignReport run_campaign(const CampaignConfig &config, const OracleCache *cache = nullptr,
                                CampaignSamples *samples = nullptr);

    struct PrewarmStats
    {
        std::size_t computed = 0;
        std::size_t reused = 0;
    };

    PrewarmStats prewarm_oracle_cache(const CampaignConfig &config, const OracleCache &cache);

    // Resolves the cache directory: explicit argument, then FICRIS_CACHE_DIR,
    // then the config's cache_dir. Empty when none is set.
    std::string resolve_cache_dir(const std::string &explicit_dir, const CampaignConfig *config);

    // Smallest T at which a curve of (T, eps) points first reaches eps <= target,
    // linear in T between measured points.
    std::optional<double> first_crossing(std::vector<std::pair<double, double>> curve, double target);

    struct FicBasComparison
    {
        std::optional<double> t_fic;
        std::optional<double> t_bas;
        std::optional<double> reduction_percent; // empty when either method never reaches the target
    };

    // For each method the earliest crossing over all of its curves, then
    // 100 (T_BAS - T_FIC) / T_BAS.
    FicBasComparison compare_fic_bas(const CampaignReport &report, double target_eps);

    // Lowest mean epsilon the method reaches anywhere in the report.
    std::optional<double> best_mean_eps(const CampaignReport &report, Method method);
}

#endif
