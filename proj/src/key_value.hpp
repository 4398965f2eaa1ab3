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

// Minimal "key = value" document reader shared by the scenario and campaign
// config formats. '#' starts a comment; keys may repeat.

#ifndef FICRIS_KEY_VALUE_HPP
#define FICRIS_KEY_VALUE_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ficris
{
    struct ChannelScenario;
}

namespace ficris::detail
{
    struct KeyValueEntry
    {
        std::string key;
        std::string value;
        std::size_t line = 0;
    };

    std::vector<KeyValueEntry> parse_key_values(const std::string &text);

    std::string trim(std::string_view s);
    std::vector<std::string> split_list(std::string_view s); // on ',' and whitespace, drops empties

    // Real number or a multiple of pi: "0.5", "-pi/2", "2*pi/6", "pi".
    double parse_real(std::string_view token);
    std::uint64_t parse_uint(std::string_view token);
    std::vector<double> parse_real_list(std::string_view s);

    // Shortest round-trip decimal.
    std::string format_real(double value);

    // Applies one scenario key; false when the key is not a scenario key.
    bool apply_scenario_key(ChannelScenario &sc, const std::string &key, const std::string &value);
}

#endif
