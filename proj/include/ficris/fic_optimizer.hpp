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

#ifndef FICRIS_FIC_OPTIMIZER_HPP
#define FICRIS_FIC_OPTIMIZER_HPP

#include "ficris/channel_model.hpp"
#include "ficris/rate_estimator.hpp"
#include "ficris/ris_config.hpp"

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ficris
{
    // Grid sizes per iteration (each a perfect square) plus the number of
    // refinement chains seeded from the first iteration.
    struct GridSchedule
    {
        std::vector<std::size_t> sizes;
        std::size_t num_starts = 1;

        std::size_t num_iterations() const { return sizes.size(); }

        // sqrt(L_1 * ... * L_i) for 1-based iteration i. The search square of
        // iteration i has side pi / gamma(i).
        double gamma(std::size_t iteration) const;

        // First `iterations` grid sizes, same number of starts.
        GridSchedule truncated(std::size_t iterations) const;

        // Run-length form such as "64-36-9x24".
        std::string to_string() const;

        // Accepts comma/space/dash separated sizes with "LxN" repeats, e.g. "64,36,9x24".
        static GridSchedule parse(std::string_view text, std::size_t num_starts = 1);

        void validate() const;
    };

    // Integer square root; throws std::invalid_argument for non-squares.
    std::size_t exact_sqrt(std::size_t value);

    // Grid of l1 angle pairs tiling [-pi/2, pi/2]^2, theta along rows, eta along columns.
    std::vector<AnglePair> initial_grid(std::size_t l1);

    // Grid of li pairs in a square of side pi / (gamma_prev * sqrt(li)) around
    // center, clamped to [-pi/2, pi/2]^2.
    std::vector<AnglePair> refined_grid(const AnglePair &center, double gamma_prev, std::size_t li);

    // 0-based arg max, lowest index on ties.
    std::size_t select_best(std::span<const double> estimated_rates);

    // T_0 * M * (L_1 + P * sum_{i >= 2} L_i)
    double estimation_time(double t0, std::size_t num_blocks, const GridSchedule &schedule);

    // The two channels around the RIS plus the RIS geometry.
    struct CascadeLink
    {
        CMat h; // N_D x N_I
        CMat g; // N_I x N_S
        ArrayGeometry ris;

        static CascadeLink from_paths(const ChannelScenario &scenario, const ChannelPair &paths);

        std::size_t num_ris_elements() const { return ris.num_elements; }
        void validate() const;
    };

    // Source of channel-estimate noise. Every sounded configuration draws from
    // its own substream keyed by (step, chain, iteration, grid index), so the
    // outcome does not depend on evaluation order.
    struct NoiseStream
    {
        std::uint64_t seed = 0;

        RandomStream substream(std::size_t chain, std::size_t iteration, std::size_t index) const;
        NoiseStream for_step(std::size_t step) const; // step 1 returns *this
    };

    struct IterationRecord
    {
        std::size_t step = 1;      // multipath step, 1-based
        std::size_t chain = 0;     // refinement chain, 0 for the first iteration and single-start runs
        std::size_t iteration = 1; // 1-based
        std::vector<AnglePair> pairs;
        std::vector<double> estimated_rates;
        std::size_t selected = 0; // 0-based index into pairs
    };

    struct FicResult
    {
        RisConfig best_config;
        AnglePair best_pair;
        double best_estimated_rate = 0.0;
        std::vector<IterationRecord> trace;
        std::size_t total_estimates = 0;
        std::vector<AnglePair> per_block_angles;
    };

    // Single refinement chain. Grid phases are written to the elements that
    // frozen_base leaves unfrozen; the returned configuration is the best
    // estimated one seen in any iteration.
    FicResult run_single_path(const CascadeLink &link, const GridSchedule &schedule, const NoiseModel &noise,
                              const RisConfig &frozen_base, const NoiseStream &stream);

    // The schedule.num_starts best first-iteration pairs each seed a chain.
    FicResult run_multi_start(const CascadeLink &link, const GridSchedule &schedule, const NoiseModel &noise,
                              const RisConfig &frozen_base, const NoiseStream &stream);

    // M interleaved sub-blocks configured one step at a time. Each step runs
    // run_multi_start on the full first-iteration grid and freezes block m.
    FicResult run_multipath(const CascadeLink &link, std::size_t num_blocks, const GridSchedule &schedule,
                            const NoiseModel &noise, const NoiseStream &stream);

    // CSV rows "step,chain,iteration,l,theta,eta,estimated_rate,selected" with 1-based l.
    void write_trace_csv(std::ostream &os, const FicResult &result);
}

#endif
