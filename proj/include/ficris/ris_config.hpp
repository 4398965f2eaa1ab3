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

#ifndef FICRIS_RIS_CONFIG_HPP
#define FICRIS_RIS_CONFIG_HPP

#include "ficris/channel_model.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace ficris
{
    // AoD from the RIS toward D (theta) and AoA at the RIS from S (eta), both
    // measured from broadside.
    struct AnglePair
    {
        double theta = 0.0;
        double eta = 0.0;

        bool operator==(const AnglePair &) const = default;
    };

    // Diagonal unit-modulus phase configuration. Phases lie in [0, 2 pi).
    // Block indices are 1-based; frozen elements were fixed by an earlier
    // multipath step and are never overwritten by overlay_configs.
    struct RisConfig
    {
        std::vector<double> phases;
        std::vector<std::size_t> block_assignment;
        std::vector<bool> frozen_mask;

        RisConfig() = default;
        explicit RisConfig(std::size_t num_elements); // all-zero phases, block 1, nothing frozen

        std::size_t size() const { return phases.size(); }
        std::size_t num_frozen() const;
        CVec phasors() const; // exp(j phi_k)
        void validate() const;
    };

    // Reduces to [0, 2 pi).
    double wrap_phase(double phase);

    // phi_k = 2 pi (d/lambda) (sin theta - sin eta) (k - 1), wrapped.
    RisConfig config_from_angles(const AnglePair &pair, const ArrayGeometry &geometry);

    // Frozen elements of base keep their phases, the rest take update's phases.
    RisConfig overlay_configs(const RisConfig &base, const RisConfig &update);

    // Freezes the elements m, m + M, m + 2M, ... (1-based) and assigns them block m.
    RisConfig freeze_block(const RisConfig &config, std::size_t step, std::size_t num_blocks);

    // Rounds each phase to the nearest multiple of 2 pi / 2^bits.
    RisConfig quantize_phases(const RisConfig &config, unsigned bits);

    // CSV rows "index,phase,block,frozen" with a 1-based index.
    void write_config_csv(std::ostream &os, const RisConfig &config);
    RisConfig read_config_csv(std::istream &is);
}

#endif
