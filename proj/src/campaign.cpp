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

#include "ficris/campaign.hpp"

#include "key_value.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace ficris
{
    const char *method_name(Method method)
    {
        return method == Method::fic ? "FIC" : "BAS";
    }

    Method method_from_name(const std::string &name)
    {
        std::string lower;
        for (char c : name)
            lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (lower == "fic")
            return Method::fic;
        if (lower == "bas")
            return Method::bas;
        throw std::invalid_argument("unknown method '" + name + "'");
    }

    std::size_t CampaignConfig::blocks() const
    {
        return num_blocks != 0 ? num_blocks : std::min(scenario.num_paths_g, scenario.num_paths_h);
    }

    bool CampaignConfig::uses(Method method) const
    {
        return std::find(methods.begin(), methods.end(), method) != methods.end();
    }

    NoiseModel CampaignConfig::noise_model(unsigned k) const
    {
        return NoiseModel{sigma_sq, est_noise_sigma_sq, k};
    }

    void CampaignConfig::validate() const
    {
        scenario.validate();
        NoiseModel{sigma_sq, est_noise_sigma_sq, 1}.validate();
        if (k_values.empty())
            throw std::invalid_argument("campaign: k_values is empty");
        for (auto k : k_values)
            if (k < 1)
                throw std::invalid_argument("campaign: K must be at least 1");
        if (methods.empty())
            throw std::invalid_argument("campaign: no methods selected");
        if (uses(Method::fic) && schedules.empty())
            throw std::invalid_argument("campaign: FIC needs at least one schedule");
        for (const auto &s : schedules)
            s.validate();
        if (uses(Method::bas))
        {
            if (bas_sizes.empty())
                throw std::invalid_argument("campaign: BAS needs bas_sizes");
            for (auto l : bas_sizes)
                exact_sqrt(l);
        }
        const std::size_t m = blocks();
        if (m < 1 || scenario.ris.num_elements % m != 0)
            throw std::invalid_argument("campaign: " + std::to_string(m) + " blocks do not divide " +
                                        std::to_string(scenario.ris.num_elements) + " RIS elements");
        oracle.validate();
        if (trials < 1)
            throw std::invalid_argument("campaign: trials must be at least 1");
    }

    CampaignConfig CampaignConfig::from_text(const std::string &text)
    {
        CampaignConfig c;
        c.schedules.clear();
        bool est_noise_set = false;
        for (const auto &e : detail::parse_key_values(text))
        {
            try
            {
                const auto &k = e.key;
                const auto &v = e.value;
                if (detail::apply_scenario_key(c.scenario, k, v))
                    continue;
                if (k == "snr_db")
                    c.sigma_sq = sigma_sq_from_snr_db(detail::parse_real(v));
                else if (k == "sigma_sq")
                    c.sigma_sq = detail::parse_real(v);
                else if (k == "est_noise_sigma_sq")
                {
                    c.est_noise_sigma_sq = detail::parse_real(v);
                    est_noise_set = true;
                }
                else if (k == "k_values")
                {
                    c.k_values.clear();
                    for (const auto &tok : detail::split_list(v))
                        c.k_values.push_back(static_cast<unsigned>(detail::parse_uint(tok)));
                }
                else if (k == "blocks")
                    c.num_blocks = detail::parse_uint(v);
                else if (k == "schedule")
                {
                    std::size_t starts = 1;
                    std::string sizes = v;
                    if (auto at = v.find("starts="); at != std::string::npos)
                    {
                        starts = detail::parse_uint(std::string_view(v).substr(at + 7));
                        sizes = v.substr(0, at);
                    }
                    c.schedules.push_back(GridSchedule::parse(sizes, starts));
                }
                else if (k == "bas_sizes")
                {
                    c.bas_sizes.clear();
                    for (const auto &tok : detail::split_list(v))
                        c.bas_sizes.push_back(detail::parse_uint(tok));
                }
                else if (k == "methods")
                {
                    c.methods.clear();
                    for (const auto &tok : detail::split_list(v))
                        c.methods.push_back(method_from_name(tok));
                }
                else if (k == "oracle_resolution")
                    c.oracle.angle_resolution = detail::parse_uint(v);
                else if (k == "oracle_refine_rounds")
                    c.oracle.refine_rounds = detail::parse_uint(v);
                else if (k == "trials")
                    c.trials = detail::parse_uint(v);
                else if (k == "base_seed")
                    c.base_seed = detail::parse_uint(v);
                else if (k == "output")
                    c.output_path = v;
                else if (k == "cache_dir")
                    c.cache_dir = v;
                else if (k == "threads")
                    c.threads = detail::parse_uint(v);
                else
                    throw std::invalid_argument("unknown key '" + k + "'");
            }
            catch (const std::invalid_argument &ex)
            {
                throw std::invalid_argument("line " + std::to_string(e.line) + ": " + ex.what());
            }
        }
        if (!est_noise_set)
            c.est_noise_sigma_sq = c.sigma_sq;
        c.validate();
        return c;
    }

    CampaignConfig CampaignConfig::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open config file " + path.string());
        std::stringstream ss;
        ss << in.rdbuf();
        return from_text(ss.str());
    }

    std::string CampaignConfig::to_text() const
    {
        std::ostringstream os;
        os << scenario_to_text(scenario);
        os << "sigma_sq = " << detail::format_real(sigma_sq) << "\n"
           << "est_noise_sigma_sq = " << detail::format_real(est_noise_sigma_sq) << "\n"
           << "k_values =";
        for (std::size_t i = 0; i < k_values.size(); ++i)
            os << (i ? ", " : " ") << k_values[i];
        os << "\nblocks = " << num_blocks << "\n";
        for (const auto &s : schedules)
            os << "schedule = " << s.to_string() << " starts=" << s.num_starts << "\n";
        if (!bas_sizes.empty())
        {
            os << "bas_sizes =";
            for (std::size_t i = 0; i < bas_sizes.size(); ++i)
                os << (i ? ", " : " ") << bas_sizes[i];
            os << "\n";
        }
        os << "methods =";
        for (std::size_t i = 0; i < methods.size(); ++i)
            os << (i ? ", " : " ") << method_name(methods[i]);
        os << "\noracle_resolution = " << oracle.angle_resolution << "\n"
           << "oracle_refine_rounds = " << oracle.refine_rounds << "\n"
           << "trials = " << trials << "\n"
           << "base_seed = " << base_seed << "\n";
        if (!output_path.empty())
            os << "output = " << output_path << "\n";
        if (!cache_dir.empty())
            os << "cache_dir = " << cache_dir << "\n";
        os << "threads = " << threads << "\n";
        return os.str();
    }

    // ---------- report ----------

    void CampaignReport::write_csv(std::ostream &os) const
    {
        os << "method,schedule,K,P,I,T,mean_eps,std_eps,neg_frac,trials\n";
        for (const auto &r : rows)
            os << method_name(r.method) << ',' << r.schedule << ',' << r.k << ',' << r.starts << ',' << r.iterations
               << ',' << detail::format_real(r.t) << ',' << detail::format_real(r.mean_eps) << ','
               << detail::format_real(r.std_eps) << ',' << detail::format_real(r.negative_fraction) << ','
               << r.trials << '\n';
    }

    void CampaignReport::save(const std::filesystem::path &path) const
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write report to " + path.string());
        write_csv(out);
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
    }

    CampaignReport CampaignReport::read_csv(std::istream &is)
    {
        CampaignReport rep;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            std::string t = detail::trim(line);
            if (t.empty() || (line_no == 1 && t.rfind("method,", 0) == 0))
                continue;
            std::vector<std::string> cells;
            std::stringstream ss(t);
            for (std::string c; std::getline(ss, c, ',');)
                cells.push_back(c);
            if (cells.size() != 10)
                throw std::invalid_argument("report line " + std::to_string(line_no) + ": expected 10 columns");
            try
            {
                ReportRow r;
                r.method = method_from_name(cells[0]);
                r.schedule = cells[1];
                r.k = static_cast<unsigned>(detail::parse_uint(cells[2]));
                r.starts = detail::parse_uint(cells[3]);
                r.iterations = detail::parse_uint(cells[4]);
                r.t = detail::parse_real(cells[5]);
                r.mean_eps = detail::parse_real(cells[6]);
                r.std_eps = detail::parse_real(cells[7]);
                r.negative_fraction = detail::parse_real(cells[8]);
                r.trials = detail::parse_uint(cells[9]);
                rep.rows.push_back(std::move(r));
            }
            catch (const std::invalid_argument &ex)
            {
                throw std::invalid_argument("report line " + std::to_string(line_no) + ": " + ex.what());
            }
        }
        return rep;
    }

    CampaignReport CampaignReport::load(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open report " + path.string());
        return read_csv(in);
    }

    // ---------- campaign ----------

    std::string resolve_cache_dir(const std::string &explicit_dir, const CampaignConfig *config)
    {
        if (!explicit_dir.empty())
            return explicit_dir;
        if (const char *env = std::getenv("FICRIS_CACHE_DIR"); env && *env)
            return env;
        return config ? config->cache_dir : std::string{};
    }

    ChannelPair campaign_trial_paths(const CampaignConfig &config, std::size_t trial)
    {
        RandomStream rng(derive_seed(config.base_seed, {0x4348414e4e454cULL, trial, config.scenario.seed}));
        return sample_channel_pair(config.scenario, rng);
    }

    namespace
    {
        struct Cell
        {
            Method method;
            GridSchedule schedule; // already truncated to the cell's I
            unsigned k;
            std::string label; // full schedule, identifies the curve
        };

        std::vector<Cell> enumerate_cells(const CampaignConfig &c)
        {
            std::vector<Cell> cells;
            for (auto method : c.methods)
            {
                if (method == Method::fic)
                {
                    for (const auto &s : c.schedules)
                        for (auto k : c.k_values)
                            for (std::size_t i = 1; i <= s.num_iterations(); ++i)
                                cells.push_back({method, s.truncated(i), k, s.to_string()});
                }
                else
                {
                    for (auto l : c.bas_sizes)
                        for (auto k : c.k_values)
                            cells.push_back({method, GridSchedule{{l}, 1}, k, std::to_string(l)});
                }
            }
            return cells;
        }

        constexpr std::uint64_t noise_tag = 0x4e4f495345ULL;

        CascadeLink trial_link(const CampaignConfig &c, std::size_t trial)
        {
            return CascadeLink::from_paths(c.scenario, campaign_trial_paths(c, trial));
        }

        template <typename Fn>
        void parallel_trials(std::size_t trials, std::size_t threads, Fn &&fn)
        {
            if (threads == 0)
                threads = std::max(1u, std::thread::hardware_concurrency());
            threads = std::min(threads, trials);

            std::atomic<std::size_t> next{0};
            std::vector<std::exception_ptr> errors(trials);
            auto worker = [&] {
                for (std::size_t t; (t = next.fetch_add(1)) < trials;)
                {
                    try
                    {
                        fn(t);
                    }
                    catch (...)
                    {
                        errors[t] = std::current_exception();
                    }
                }
            };
            if (threads <= 1)
                worker();
            else
            {
                std::vector<std::jthread> pool;
                for (std::size_t i = 0; i < threads; ++i)
                    pool.emplace_back(worker);
            }
            for (auto &e : errors)
                if (e)
                    std::rethrow_exception(e);
        }
    }

    CampaignReport run_campaign(const CampaignConfig &config, const OracleCache *cache, CampaignSamples *samples)
    {
        config.validate();

        std::optional<OracleCache> own_cache;
        if (!cache)
            if (auto dir = resolve_cache_dir("", &config); !dir.empty())
                cache = &own_cache.emplace(dir);

        std::ofstream out;
        if (!config.output_path.empty())
        {
            out.open(config.output_path, std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write report to " + config.output_path);
        }

        const std::size_t m = config.blocks();
        const auto cells = enumerate_cells(config);
        std::vector<std::vector<double>> eps(cells.size(), std::vector<double>(config.trials));
        std::vector<double> c_opt(config.trials);

        parallel_trials(config.trials, config.threads, [&](std::size_t trial) {
            const CascadeLink link = trial_link(config, trial);
            const OracleResult oracle = cache ? cache->get_or_compute(link, m, config.oracle, config.sigma_sq)
                                              : oracle_optimal_rate(link, m, config.oracle, config.sigma_sq);
            c_opt[trial] = oracle.c_opt;
            const NoiseStream stream{derive_seed(config.base_seed, {noise_tag, trial})};
            for (std::size_t ci = 0; ci < cells.size(); ++ci)
            {
                const Cell &cell = cells[ci];
                FicResult r = run_multipath(link, m, cell.schedule, config.noise_model(cell.k), stream);
                const double c_hat = achievable_rate(compose_cascade(link.h, r.best_config, link.g), config.sigma_sq);
                eps[ci][trial] = rate_loss(oracle.c_opt, c_hat);
            }
        });

        CampaignReport report;
        for (std::size_t ci = 0; ci < cells.size(); ++ci)
        {
            const Cell &cell = cells[ci];
            const auto &e = eps[ci];
            const double n = static_cast<double>(e.size());
            double mean = 0.0, negatives = 0.0;
            for (double v : e)
            {
                mean += v;
                negatives += v < 0.0 ? 1.0 : 0.0;
            }
            mean /= n;
            double var = 0.0;
            for (double v : e)
                var += (v - mean) * (v - mean);
            var = e.size() > 1 ? var / (n - 1.0) : 0.0;

            ReportRow row;
            row.method = cell.method;
            row.schedule = cell.label;
            row.k = cell.k;
            row.starts = cell.schedule.num_starts;
            row.iterations = cell.schedule.num_iterations();
            row.t = estimation_time(cell.k, m, cell.schedule);
            row.mean_eps = mean;
            row.std_eps = std::sqrt(var);
            row.negative_fraction = negatives / n;
            row.trials = e.size();
            report.rows.push_back(std::move(row));
        }

        if (out.is_open())
        {
            report.write_csv(out);
            if (!out)
                throw std::runtime_error("write failed for " + config.output_path);
        }
        if (samples)
        {
            samples->eps = std::move(eps);
            samples->c_opt = std::move(c_opt);
        }
        return report;
    }

    PrewarmStats prewarm_oracle_cache(const CampaignConfig &config, const OracleCache &cache)
    {
        config.validate();
        std::vector<char> cached(config.trials, 0);
        parallel_trials(config.trials, config.threads, [&](std::size_t trial) {
            bool hit = false;
            cache.get_or_compute(trial_link(config, trial), config.blocks(), config.oracle, config.sigma_sq, &hit);
            cached[trial] = hit ? 1 : 0;
        });
        PrewarmStats s;
        for (char c : cached)
            (c ? s.reused : s.computed)++;
        return s;
    }

    std::optional<double> first_crossing(std::vector<std::pair<double, double>> curve, double target)
    {
        std::stable_sort(curve.begin(), curve.end(),
                         [](const auto &a, const auto &b) { return a.first < b.first; });
        for (std::size_t j = 0; j < curve.size(); ++j)
        {
            if (curve[j].second > target)
                continue;
            if (j == 0)
                return curve[0].first;
            const auto [t0, e0] = curve[j - 1];
            const auto [t1, e1] = curve[j];
            return t0 + (e0 - target) * (t1 - t0) / (e0 - e1);
        }
        return std::nullopt;
    }

    FicBasComparison compare_fic_bas(const CampaignReport &report, double target_eps)
    {
        // BAS curves run across L_1, FIC curves across I.
        using Key = std::tuple<Method, std::string, unsigned, std::size_t>;
        std::map<Key, std::vector<std::pair<double, double>>> curves;
        for (const auto &r : report.rows)
        {
            Key key{r.method, r.method == Method::bas ? std::string{} : r.schedule, r.k, r.starts};
            curves[key].emplace_back(r.t, r.mean_eps);
        }

        FicBasComparison out;
        for (const auto &[key, curve] : curves)
        {
            auto t = first_crossing(curve, target_eps);
            if (!t)
                continue;
            auto &slot = std::get<0>(key) == Method::fic ? out.t_fic : out.t_bas;
            if (!slot || *t < *slot)
                slot = t;
        }
        if (out.t_fic && out.t_bas && *out.t_bas > 0.0)
            out.reduction_percent = 100.0 * (*out.t_bas - *out.t_fic) / *out.t_bas;
        return out;
    }

    std::optional<double> best_mean_eps(const CampaignReport &report, Method method)
    {
        std::optional<double> best;
        for (const auto &r : report.rows)
            if (r.method == method && (!best || r.mean_eps < *best))
                best = r.mean_eps;
        return best;
    }
}
