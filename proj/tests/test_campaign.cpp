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

#include <catch2/catch_amalgamated.hpp>

#include "ficris/campaign.hpp"
#include "test_support.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace ficris;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

namespace
{
    const char *small_config = R"(# small geometry
ris_elements = 24
source_elements = 2
destination_elements = 4
paths_g = 3
paths_h = 3
snr_db = -15
blocks = 3
schedule = 16,9,9
schedule = 9x3 starts=2
bas_sizes = 9, 25
methods = fic, bas
k_values = 1 2
oracle_resolution = 32
oracle_refine_rounds = 1
trials = 4
base_seed = 12
threads = 2
)";

    std::filesystem::path scratch_dir(const char *name)
    {
        auto p = std::filesystem::temp_directory_path() / ("ficris-campaign-" + std::to_string(::getpid()) + "-" + name);
        std::filesystem::remove_all(p);
        std::filesystem::create_directories(p);
        return p;
    }

    std::string slurp(const std::filesystem::path &p)
    {
        std::ifstream in(p);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    ReportRow row(Method m, const std::string &sched, double t, double eps)
    {
        ReportRow r;
        r.method = m;
        r.schedule = sched;
        r.t = t;
        r.mean_eps = eps;
        r.trials = 1;
        return r;
    }
}

TEST_CASE("CampaignConfig - parsing")
{
    auto c = CampaignConfig::from_text(small_config);
    CHECK(c.scenario.ris.num_elements == 24);
    CHECK(c.sigma_sq == sigma_sq_from_snr_db(-15.0));
    CHECK(c.est_noise_sigma_sq == c.sigma_sq);
    CHECK(c.blocks() == 3);
    REQUIRE(c.schedules.size() == 2);
    CHECK(c.schedules[1].sizes == std::vector<std::size_t>{9, 9, 9});
    CHECK(c.schedules[1].num_starts == 2);
    CHECK(c.bas_sizes == std::vector<std::size_t>{9, 25});
    CHECK(c.uses(Method::bas));
    CHECK(c.k_values == std::vector<unsigned>{1, 2});
    CHECK(c.noise_model(2).estimates_per_config == 2);

    auto back = CampaignConfig::from_text(c.to_text());
    CHECK(back.to_text() == c.to_text());

    CHECK(CampaignConfig::from_text("schedule = 9\nsigma_sq = 2\n").est_noise_sigma_sq == 2.0);
    CHECK(CampaignConfig::from_text("schedule = 9\nsigma_sq = 2\nest_noise_sigma_sq = 0\n").est_noise_sigma_sq == 0.0);
    // default blocks = min(L_G, L_H)
    CHECK(CampaignConfig::from_text("schedule = 9\npaths_g = 2\npaths_h = 3\n").blocks() == 2);
}

TEST_CASE("CampaignConfig - errors name the line")
{
    CHECK_THROWS_WITH(CampaignConfig::from_text("schedule = 9\nbogus = 1\n"), ContainsSubstring("line 2"));
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 10\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 9\nblocks = 7\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 9\nmethods = bas\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("methods = fic\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 9\ntrials = 0\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 9\nmethods = xyz\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::from_text("schedule = 9 starts=10\n"), std::invalid_argument);
    CHECK_THROWS_AS(CampaignConfig::load("/nonexistent/ficris.cfg"), std::exception);
}

TEST_CASE("run_campaign - single noiseless cell")
{
    auto c = CampaignConfig::from_text(small_config);
    c.schedules = {GridSchedule{{9}, 1}};
    c.methods = {Method::fic};
    c.k_values = {1};
    c.est_noise_sigma_sq = 0.0;
    c.trials = 1;
    auto r = run_campaign(c);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].t == 27.0);
    CHECK(r.rows[0].iterations == 1);
    CHECK(r.rows[0].std_eps == 0.0);
    CHECK(r.rows[0].mean_eps <= 1.0);
}

TEST_CASE("run_campaign - rows, T column and samples")
{
    auto c = CampaignConfig::from_text(small_config);
    CampaignSamples samples;
    auto r = run_campaign(c, nullptr, &samples);
    // FIC: (3 + 3) iterations x 2 K; BAS: 2 sizes x 2 K.
    REQUIRE(r.rows.size() == 16);
    REQUIRE(samples.eps.size() == 16);
    REQUIRE(samples.c_opt.size() == 4);
    for (std::size_t i = 0; i < r.rows.size(); ++i)
    {
        const auto &row = r.rows[i];
        GridSchedule s = GridSchedule::parse(row.schedule, row.starts).truncated(row.iterations);
        CHECK(row.t == estimation_time(row.k, 3, s));
        CHECK(row.trials == 4);
        double mean = 0.0;
        for (double e : samples.eps[i])
        {
            mean += e;
            CHECK(e <= 1.0);
        }
        CHECK_THAT(row.mean_eps, WithinAbs(mean / 4.0, 1e-12));
    }
}

TEST_CASE("run_campaign - reruns are byte-identical, thread count does not matter")
{
    auto dir = scratch_dir("rerun");
    auto c = CampaignConfig::from_text(small_config);
    c.output_path = (dir / "a.csv").string();
    run_campaign(c);
    c.output_path = (dir / "b.csv").string();
    c.threads = 1;
    run_campaign(c);
    c.output_path = (dir / "c.csv").string();
    c.cache_dir = (dir / "cache").string();
    run_campaign(c);
    c.output_path = (dir / "d.csv").string();
    run_campaign(c); // served from the cache
    const auto a = slurp(dir / "a.csv");
    CHECK(!a.empty());
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(a == slurp(dir / "c.csv"));
    CHECK(a == slurp(dir / "d.csv"));

    auto loaded = CampaignReport::load(dir / "a.csv");
    std::ostringstream os;
    loaded.write_csv(os);
    CHECK(os.str() == a);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_campaign - unwritable output is an error")
{
    auto c = CampaignConfig::from_text(small_config);
    c.output_path = "/nonexistent-dir/out.csv";
    CHECK_THROWS_AS(run_campaign(c), std::runtime_error);
}

TEST_CASE("prewarm_oracle_cache")
{
    auto dir = scratch_dir("prewarm");
    auto c = CampaignConfig::from_text(small_config);
    OracleCache cache(dir);
    auto first = prewarm_oracle_cache(c, cache);
    CHECK(first.computed == 4);
    CHECK(first.reused == 0);
    auto second = prewarm_oracle_cache(c, cache);
    CHECK(second.computed == 0);
    CHECK(second.reused == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("resolve_cache_dir - precedence")
{
    CampaignConfig c;
    c.cache_dir = "from-config";
    ::unsetenv("FICRIS_CACHE_DIR");
    CHECK(resolve_cache_dir("", &c) == "from-config");
    CHECK(resolve_cache_dir("", nullptr).empty());
    ::setenv("FICRIS_CACHE_DIR", "from-env", 1);
    CHECK(resolve_cache_dir("", &c) == "from-env");
    CHECK(resolve_cache_dir("explicit", &c) == "explicit");
    ::unsetenv("FICRIS_CACHE_DIR");
}

TEST_CASE("first_crossing - linear interpolation")
{
    CHECK(first_crossing({{100.0, 0.5}, {200.0, 0.3}}, 0.4) == 150.0);
    CHECK(first_crossing({{200.0, 0.3}, {100.0, 0.5}}, 0.4) == 150.0);
    CHECK(first_crossing({{100.0, 0.2}, {200.0, 0.1}}, 0.4) == 100.0);
    CHECK_FALSE(first_crossing({{100.0, 0.5}, {200.0, 0.45}}, 0.4).has_value());
    CHECK(first_crossing({{100.0, 0.5}, {200.0, 0.4}}, 0.4) == 200.0);
}

TEST_CASE("compare_fic_bas - examples")
{
    CampaignReport same;
    same.rows = {row(Method::fic, "9x2", 100.0, 0.5), row(Method::fic, "9x2", 200.0, 0.2),
                 row(Method::bas, "9", 100.0, 0.5), row(Method::bas, "16", 200.0, 0.2)};
    auto s = compare_fic_bas(same, 0.2);
    REQUIRE(s.reduction_percent.has_value());
    CHECK(*s.reduction_percent == 0.0);

    CampaignReport r;
    r.rows = {row(Method::fic, "9x2", 100.0, 0.5), row(Method::fic, "9x2", 300.0, 0.1),
              row(Method::bas, "9", 100.0, 0.5), row(Method::bas, "400", 400.0, 0.1)};
    auto c = compare_fic_bas(r, 0.1);
    CHECK(c.t_fic == 300.0);
    CHECK(c.t_bas == 400.0);
    CHECK_THAT(*c.reduction_percent, WithinAbs(25.0, 1e-12));

    // Interpolated inside the FIC curve; schedules sharing a prefix stay separate curves.
    r.rows.push_back(row(Method::fic, "9x4", 100.0, 0.45));
    auto mid = compare_fic_bas(r, 0.3);
    CHECK_THAT(*mid.t_fic, WithinAbs(200.0, 1e-9));
    r.rows.pop_back();

    auto none = compare_fic_bas(r, 0.05);
    CHECK_FALSE(none.t_fic.has_value());
    CHECK_FALSE(none.reduction_percent.has_value());

    CHECK(best_mean_eps(r, Method::bas) == 0.1);
    CHECK_FALSE(best_mean_eps(CampaignReport{}, Method::fic).has_value());
}

TEST_CASE("CampaignReport - CSV errors")
{
    std::istringstream bad_header("a,b\n");
    CHECK_THROWS_AS(CampaignReport::read_csv(bad_header), std::invalid_argument);
    std::istringstream short_row("method,schedule,K,P,I,T,mean_eps,std_eps,neg_frac,trials\nFIC,9,1\n");
    CHECK_THROWS_AS(CampaignReport::read_csv(short_row), std::invalid_argument);
}
