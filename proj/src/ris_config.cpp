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

#include "ficris/ris_config.hpp"

#include "key_value.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ficris
{
    RisConfig::RisConfig(std::size_t num_elements)
        : phases(num_elements, 0.0), block_assignment(num_elements, 1), frozen_mask(num_elements, false)
    {
    }

    std::size_t RisConfig::num_frozen() const
    {
        return static_cast<std::size_t>(std::count(frozen_mask.begin(), frozen_mask.end(), true));
    }

    CVec RisConfig::phasors() const
    {
        CVec v(static_cast<Eigen::Index>(phases.size()));
        for (std::size_t k = 0; k < phases.size(); ++k)
            v(static_cast<Eigen::Index>(k)) = std::polar(1.0, phases[k]);
        return v;
    }

    void RisConfig::validate() const
    {
        if (phases.empty())
            throw std::invalid_argument("RisConfig: no elements");
        if (block_assignment.size() != phases.size() || frozen_mask.size() != phases.size())
            throw std::invalid_argument("RisConfig: phases, blocks and frozen mask differ in length");
        for (std::size_t k = 0; k < phases.size(); ++k)
        {
            if (!(phases[k] >= 0.0 && phases[k] < two_pi))
                throw std::invalid_argument("RisConfig: phase " + std::to_string(k + 1) + " outside [0, 2 pi)");
            if (block_assignment[k] < 1)
                throw std::invalid_argument("RisConfig: block indices are 1-based");
        }
    }

    double wrap_phase(double phase)
    {
        double w = std::fmod(phase, two_pi);
        if (w < 0.0)
            w += two_pi;
        if (w >= two_pi) // fmod + two_pi can round up
            w = 0.0;
        return w;
    }

    RisConfig config_from_angles(const AnglePair &pair, const ArrayGeometry &geometry)
    {
        geometry.validate();
        RisConfig c(geometry.num_elements);
        const double slope = two_pi * geometry.spacing_over_lambda * (std::sin(pair.theta) - std::sin(pair.eta));
        for (std::size_t k = 0; k < c.size(); ++k)
            c.phases[k] = wrap_phase(slope * static_cast<double>(k));
        return c;
    }

    RisConfig overlay_configs(const RisConfig &base, const RisConfig &update)
    {
        if (base.size() != update.size())
            throw std::invalid_argument("overlay_configs: base has " + std::to_string(base.size()) +
                                        " elements, update has " + std::to_string(update.size()));
        RisConfig out = base;
        for (std::size_t k = 0; k < out.size(); ++k)
            if (!base.frozen_mask[k])
                out.phases[k] = update.phases[k];
        return out;
    }

    RisConfig freeze_block(const RisConfig &config, std::size_t step, std::size_t num_blocks)
    {
        if (num_blocks < 1 || step < 1 || step > num_blocks)
            throw std::invalid_argument("freeze_block: step " + std::to_string(step) + " outside 1.." +
                                        std::to_string(num_blocks));
        if (config.size() % num_blocks != 0)
            throw std::invalid_argument("freeze_block: " + std::to_string(num_blocks) + " blocks do not divide " +
                                        std::to_string(config.size()) + " elements");
        RisConfig out = config;
        for (std::size_t k = step - 1; k < out.size(); k += num_blocks)
        {
            out.frozen_mask[k] = true;
            out.block_assignment[k] = step;
        }
        return out;
    }

    RisConfig quantize_phases(const RisConfig &config, unsigned bits)
    {
        if (bits < 1 || bits > 52)
            throw std::invalid_argument("quantize_phases: bits must be in 1..52");
        const double levels = std::ldexp(1.0, static_cast<int>(bits));
        const double step = two_pi / levels;
        RisConfig out = config;
        for (auto &p : out.phases)
        {
            double level = std::nearbyint(p / step);
            if (level >= levels)
                level -= levels;
            p = level * step;
        }
        return out;
    }

    void write_config_csv(std::ostream &os, const RisConfig &config)
    {
        os << "index,phase,block,frozen\n";
        for (std::size_t k = 0; k < config.size(); ++k)
            os << (k + 1) << ',' << detail::format_real(config.phases[k]) << ',' << config.block_assignment[k] << ','
               << (config.frozen_mask[k] ? 1 : 0) << '\n';
    }

    RisConfig read_config_csv(std::istream &is)
    {
        RisConfig c;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            std::string t = detail::trim(line);
            if (t.empty() || (line_no == 1 && t.rfind("index", 0) == 0))
                continue;
            std::vector<std::string> cells;
            std::stringstream ss(t);
            for (std::string cell; std::getline(ss, cell, ',');)
                cells.push_back(cell);
            if (cells.size() != 4)
                throw std::invalid_argument("config csv line " + std::to_string(line_no) + ": expected 4 columns");
            if (detail::parse_uint(cells[0]) != c.size() + 1)
                throw std::invalid_argument("config csv line " + std::to_string(line_no) + ": index out of order");
            auto frozen = detail::parse_uint(cells[3]);
            if (frozen > 1)
                throw std::invalid_argument("config csv line " + std::to_string(line_no) + ": frozen must be 0 or 1");
            c.phases.push_back(detail::parse_real(cells[1]));
            c.block_assignment.push_back(detail::parse_uint(cells[2]));
            c.frozen_mask.push_back(frozen == 1);
        }
        c.validate();
        return c;
    }
}
