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

#include "ficris/fic_optimizer.hpp"

#include "key_value.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ficris
{
    std::size_t exact_sqrt(std::size_t value)
    {
        auto r = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(value))));
        while (r * r > value)
            --r;
        while ((r + 1) * (r + 1) <= value)
            ++r;
        if (value == 0 || r * r != value)
            throw std::invalid_argument("grid size " + std::to_string(value) + " is not a positive perfect square");
        return r;
    }

    double GridSchedule::gamma(std::size_t iteration) const
    {
        if (iteration < 1 || iteration > sizes.size())
            throw std::out_of_range("GridSchedule::gamma: iteration out of range");
        double g = 1.0;
        for (std::size_t i = 0; i < iteration; ++i)
            g *= static_cast<double>(exact_sqrt(sizes[i]));
        return g;
    }

    GridSchedule GridSchedule::truncated(std::size_t iterations) const
    {
        if (iterations < 1 || iterations > sizes.size())
            throw std::out_of_range("GridSchedule::truncated: iteration count out of range");
        return GridSchedule{std::vector<std::size_t>(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(iterations)),
                            num_starts};
    }

    std::string GridSchedule::to_string() const
    {
        std::string s;
        for (std::size_t i = 0; i < sizes.size();)
        {
            std::size_t j = i;
            while (j < sizes.size() && sizes[j] == sizes[i])
                ++j;
            if (!s.empty())
                s += '-';
            s += std::to_string(sizes[i]);
            if (j - i > 1)
                s += 'x' + std::to_string(j - i);
            i = j;
        }
        return s;
    }

    GridSchedule GridSchedule::parse(std::string_view text, std::size_t num_starts)
    {
        std::string normalized(text);
        std::replace(normalized.begin(), normalized.end(), '-', ',');
        GridSchedule s;
        s.num_starts = num_starts;
        for (const auto &tok : detail::split_list(normalized))
        {
            auto x = tok.find('x');
            if (x == std::string::npos)
                s.sizes.push_back(detail::parse_uint(tok));
            else
            {
                auto size = detail::parse_uint(std::string_view(tok).substr(0, x));
                auto count = detail::parse_uint(std::string_view(tok).substr(x + 1));
                if (count == 0)
                    throw std::invalid_argument("schedule: zero repeat count in '" + tok + "'");
                s.sizes.insert(s.sizes.end(), count, size);
            }
        }
        s.validate();
        return s;
    }

    void GridSchedule::validate() const
    {
        if (sizes.empty())
            throw std::invalid_argument("GridSchedule: at least one iteration is required");
        for (auto l : sizes)
            exact_sqrt(l);
        if (num_starts < 1)
            throw std::invalid_argument("GridSchedule: number of starts must be at least 1");
        if (num_starts > sizes.front())
            throw std::invalid_argument("GridSchedule: " + std::to_string(num_starts) + " starts exceed L_1 = " +
                                        std::to_string(sizes.front()));
    }

    // Offset of cell j in a row of n cells of width `spacing` centred on zero.
    static double cell_offset(std::size_t j, std::size_t n, double spacing)
    {
        return spacing * (2.0 * static_cast<double>(j) + 1.0 - static_cast<double>(n)) / 2.0;
    }

    std::vector<AnglePair> initial_grid(std::size_t l1)
    {
        const std::size_t n = exact_sqrt(l1);
        const double spacing = pi / static_cast<double>(n);
        std::vector<AnglePair> grid;
        grid.reserve(l1);
        for (std::size_t l = 0; l < l1; ++l)
            grid.push_back({cell_offset(l / n, n, spacing), cell_offset(l % n, n, spacing)});
        return grid;
    }

    std::vector<AnglePair> refined_grid(const AnglePair &center, double gamma_prev, std::size_t li)
    {
        if (!(gamma_prev > 0.0))
            throw std::invalid_argument("refined_grid: gamma must be positive");
        const std::size_t n = exact_sqrt(li);
        const double spacing = pi / (gamma_prev * static_cast<double>(n));
        std::vector<AnglePair> grid;
        grid.reserve(li);
        for (std::size_t l = 0; l < li; ++l)
            grid.push_back({std::clamp(center.theta + cell_offset(l / n, n, spacing), -pi / 2.0, pi / 2.0),
                            std::clamp(center.eta + cell_offset(l % n, n, spacing), -pi / 2.0, pi / 2.0)});
        return grid;
    }

    std::size_t select_best(std::span<const double> estimated_rates)
    {
        if (estimated_rates.empty())
            throw std::invalid_argument("select_best: no rates");
        std::size_t best = 0;
        for (std::size_t i = 0; i < estimated_rates.size(); ++i)
        {
            if (!std::isfinite(estimated_rates[i]))
                throw std::invalid_argument("select_best: non-finite rate at index " + std::to_string(i));
            if (estimated_rates[i] > estimated_rates[best])
                best = i;
        }
        return best;
    }

    double estimation_time(double t0, std::size_t num_blocks, const GridSchedule &schedule)
    {
        schedule.validate();
        std::size_t tail = 0;
        for (std::size_t i = 1; i < schedule.sizes.size(); ++i)
            tail += schedule.sizes[i];
        return t0 * static_cast<double>(num_blocks) *
               static_cast<double>(schedule.sizes.front() + schedule.num_starts * tail);
    }

    CascadeLink CascadeLink::from_paths(const ChannelScenario &scenario, const ChannelPair &paths)
    {
        return CascadeLink{channel_h(scenario, paths.h), channel_g(scenario, paths.g), scenario.ris};
    }

    void CascadeLink::validate() const
    {
        ris.validate();
        const auto n = static_cast<Eigen::Index>(ris.num_elements);
        if (h.cols() != n || g.rows() != n || h.rows() < 1 || g.cols() < 1)
            throw std::invalid_argument("CascadeLink: H must be N_D x N_I and G N_I x N_S with N_I = " +
                                        std::to_string(n));
    }

    RandomStream NoiseStream::substream(std::size_t chain, std::size_t iteration, std::size_t index) const
    {
        return RandomStream(derive_seed(seed, {chain, iteration, index}));
    }

    NoiseStream NoiseStream::for_step(std::size_t step) const
    {
        if (step <= 1)
            return *this;
        return NoiseStream{derive_seed(seed, {0x5354455000000000ULL, step})};
    }

    namespace
    {
        class Searcher
        {
        public:
            Searcher(const CascadeLink &link, const NoiseModel &noise, const RisConfig &base, const NoiseStream &stream)
                : link_(link), noise_(noise), base_(base), stream_(stream)
            {
            }

            IterationRecord sound(std::vector<AnglePair> grid, std::size_t chain, std::size_t iteration,
                                  FicResult &result)
            {
                IterationRecord rec;
                rec.chain = chain;
                rec.iteration = iteration;
                rec.estimated_rates.reserve(grid.size());
                for (std::size_t l = 0; l < grid.size(); ++l)
                {
                    RisConfig cfg = overlay_configs(base_, config_from_angles(grid[l], link_.ris));
                    RandomStream rng = stream_.substream(chain, iteration, l);
                    CMat q_hat = estimate_cascade(compose_cascade(link_.h, cfg, link_.g), noise_, rng);
                    double rate = achievable_rate(q_hat, noise_.sigma_sq);
                    rec.estimated_rates.push_back(rate);
                    if (!have_best_ || rate > result.best_estimated_rate)
                    {
                        have_best_ = true;
                        result.best_estimated_rate = rate;
                        result.best_config = std::move(cfg);
                        result.best_pair = grid[l];
                    }
                }
                rec.selected = select_best(rec.estimated_rates);
                rec.pairs = std::move(grid);
                return rec;
            }

        private:
            const CascadeLink &link_;
            const NoiseModel &noise_;
            const RisConfig &base_;
            const NoiseStream &stream_;
            bool have_best_ = false;
        };

        FicResult search(const CascadeLink &link, const GridSchedule &schedule, std::size_t starts,
                         const NoiseModel &noise, const RisConfig &frozen_base, const NoiseStream &stream)
        {
            link.validate();
            schedule.validate();
            noise.validate();
            frozen_base.validate();
            if (frozen_base.size() != link.num_ris_elements())
                throw std::invalid_argument("FIC: base configuration has " + std::to_string(frozen_base.size()) +
                                            " elements, RIS has " + std::to_string(link.num_ris_elements()));
            if (starts < 1 || starts > schedule.sizes.front())
                throw std::invalid_argument("FIC: " + std::to_string(starts) + " starting points with L_1 = " +
                                            std::to_string(schedule.sizes.front()));

            FicResult result;
            Searcher searcher(link, noise, frozen_base, stream);

            IterationRecord first = searcher.sound(initial_grid(schedule.sizes.front()), 0, 1, result);

            std::vector<std::size_t> order(first.pairs.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return first.estimated_rates[a] > first.estimated_rates[b];
            });
            order.resize(starts);

            std::vector<AnglePair> centers;
            for (auto idx : order)
                centers.push_back(first.pairs[idx]);
            result.trace.push_back(std::move(first));

            for (std::size_t chain = 0; chain < starts; ++chain)
            {
                AnglePair center = centers[chain];
                double gamma_prev = schedule.gamma(1);
                for (std::size_t i = 2; i <= schedule.num_iterations(); ++i)
                {
                    IterationRecord rec =
                        searcher.sound(refined_grid(center, gamma_prev, schedule.sizes[i - 1]), chain, i, result);
                    center = rec.pairs[rec.selected];
                    gamma_prev = schedule.gamma(i);
                    result.trace.push_back(std::move(rec));
                }
            }

            result.total_estimates = static_cast<std::size_t>(
                estimation_time(noise.estimates_per_config, 1, GridSchedule{schedule.sizes, starts}));
            result.per_block_angles = {result.best_pair};
            return result;
        }
    }

    FicResult run_single_path(const CascadeLink &link, const GridSchedule &schedule, const NoiseModel &noise,
                              const RisConfig &frozen_base, const NoiseStream &stream)
    {
        return search(link, schedule, 1, noise, frozen_base, stream);
    }

    FicResult run_multi_start(const CascadeLink &link, const GridSchedule &schedule, const NoiseModel &noise,
                              const RisConfig &frozen_base, const NoiseStream &stream)
    {
        return search(link, schedule, schedule.num_starts, noise, frozen_base, stream);
    }

    FicResult run_multipath(const CascadeLink &link, std::size_t num_blocks, const GridSchedule &schedule,
                            const NoiseModel &noise, const NoiseStream &stream)
    {
        link.validate();
        const std::size_t n = link.num_ris_elements();
        if (num_blocks < 1 || n % num_blocks != 0)
            throw std::invalid_argument("run_multipath: " + std::to_string(num_blocks) + " blocks do not divide " +
                                        std::to_string(n) + " RIS elements");

        FicResult out;
        RisConfig config(n);
        for (std::size_t m = 1; m <= num_blocks; ++m)
        {
            FicResult step = run_multi_start(link, schedule, noise, config, stream.for_step(m));
            for (auto &rec : step.trace)
            {
                rec.step = m;
                out.trace.push_back(std::move(rec));
            }
            out.total_estimates += step.total_estimates;
            out.per_block_angles.push_back(step.best_pair);
            out.best_estimated_rate = step.best_estimated_rate;
            out.best_pair = step.best_pair;
            config = freeze_block(step.best_config, m, num_blocks);
        }
        out.best_config = std::move(config);
        return out;
    }

    void write_trace_csv(std::ostream &os, const FicResult &result)
    {
        os << "step,chain,iteration,l,theta,eta,estimated_rate,selected\n";
        for (const auto &rec : result.trace)
            for (std::size_t l = 0; l < rec.pairs.size(); ++l)
                os << rec.step << ',' << rec.chain << ',' << rec.iteration << ',' << (l + 1) << ','
                   << detail::format_real(rec.pairs[l].theta) << ',' << detail::format_real(rec.pairs[l].eta) << ','
                   << detail::format_real(rec.estimated_rates[l]) << ',' << (l == rec.selected ? 1 : 0) << '\n';
    }
}
