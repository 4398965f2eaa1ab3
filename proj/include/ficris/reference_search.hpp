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

#ifndef FICRIS_REFERENCE_SEARCH_HPP
#define FICRIS_REFERENCE_SEARCH_HPP

#include "ficris/fic_optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

namespace ficris
{
    // Dense noiseless search used as the C_opt reference.
    struct OracleSpec
    {
        std::size_t angle_resolution = 256; // grid points per axis
        std::size_t refine_rounds = 3;      // local passes, each 10x finer

        void validate() const;
    };

    struct OracleResult
    {
        double c_opt = 0.0;
        RisConfig config;
        std::vector<AnglePair> per_block_angles;
    };

    // Single dense grid, evaluated once per step: FIC with schedule (l1).
    FicResult run_bas(const CascadeLink &link, std::size_t l1, std::size_t num_blocks, const NoiseModel &noise,
                      const NoiseStream &stream);

    // Same M-step angle-pair parameterization as FIC with exact rates. The
    // grid is theta_j = -pi/2 + j pi / resolution, j = 0..resolution-1, on
    // both axes, so a grid is contained in any grid with a multiple of its
    // resolution.
    OracleResult oracle_optimal_rate(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                     double sigma_sq);

    // (c_opt - c_hat) / c_opt. Negative values mean the reference was beaten.
    double rate_loss(double c_opt, double c_hat);

    // On-disk store of oracle results, one text file per key. Values are
    // written as hex floats so a cached result is bit-identical to a fresh one.
    class OracleCache
    {
    public:
        static constexpr int format_version = 1;

        explicit OracleCache(std::filesystem::path directory);

        static std::uint64_t key(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                 double sigma_sq);

        std::optional<OracleResult> load(std::uint64_t key) const;
        void store(std::uint64_t key, const OracleResult &result) const;

        // Looks up the key and computes and stores on a miss.
        OracleResult get_or_compute(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                    double sigma_sq, bool *was_cached = nullptr) const;

        const std::filesystem::path &directory() const { return directory_; }
        std::filesystem::path file_for(std::uint64_t key) const;

    private:
        std::filesystem::path directory_;
    };
}

#endif
