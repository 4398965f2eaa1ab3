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

#include "key_value.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ficris::detail
{
    std::string trim(std::string_view s)
    {
        const char *ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        if (b == std::string_view::npos)
            return {};
        auto e = s.find_last_not_of(ws);
        return std::string(s.substr(b, e - b + 1));
    }

    std::vector<KeyValueEntry> parse_key_values(const std::string &text)
    {
        std::vector<KeyValueEntry> out;
        std::size_t line_no = 0, pos = 0;
        while (pos <= text.size())
        {
            auto nl = text.find('\n', pos);
            std::string_view line(text.data() + pos, (nl == std::string::npos ? text.size() : nl) - pos);
            pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
            ++line_no;

            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            std::string stripped = trim(line);
            if (stripped.empty())
                continue;

            auto eq = stripped.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("line " + std::to_string(line_no) + ": expected 'key = value'");
            KeyValueEntry entry{trim(std::string_view(stripped).substr(0, eq)),
                                trim(std::string_view(stripped).substr(eq + 1)), line_no};
            if (entry.key.empty())
                throw std::invalid_argument("line " + std::to_string(line_no) + ": empty key");
            out.push_back(std::move(entry));
        }
        return out;
    }

    std::vector<std::string> split_list(std::string_view s)
    {
        std::vector<std::string> out;
        std::string cur;
        for (char c : s)
        {
            if (c == ',' || c == ' ' || c == '\t')
            {
                if (!cur.empty())
                    out.push_back(std::move(cur));
                cur.clear();
            }
            else
                cur.push_back(c);
        }
        if (!cur.empty())
            out.push_back(std::move(cur));
        return out;
    }

    static double parse_plain(std::string_view t, std::string_view whole)
    {
        double v = 0.0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc() || p != t.data() + t.size())
            throw std::invalid_argument("not a number: '" + std::string(whole) + "'");
        return v;
    }

    double parse_real(std::string_view token)
    {
        std::string t = trim(token);
        if (t.empty())
            throw std::invalid_argument("empty number");
        auto pi_at = t.find("pi");
        if (pi_at == std::string::npos)
            return parse_plain(t, token);

        // [sign][factor*]pi[/divisor]
        std::string_view sv(t);
        double sign = 1.0;
        std::string_view head = sv.substr(0, pi_at);
        std::string_view tail = sv.substr(pi_at + 2);
        if (!head.empty() && (head.front() == '-' || head.front() == '+'))
        {
            sign = head.front() == '-' ? -1.0 : 1.0;
            head.remove_prefix(1);
        }
        double factor = 1.0;
        if (!head.empty())
        {
            if (head.back() != '*')
                throw std::invalid_argument("not a number: '" + t + "'");
            factor = parse_plain(head.substr(0, head.size() - 1), token);
        }
        double divisor = 1.0;
        if (!tail.empty())
        {
            if (tail.front() != '/')
                throw std::invalid_argument("not a number: '" + t + "'");
            divisor = parse_plain(tail.substr(1), token);
            if (divisor == 0.0)
                throw std::invalid_argument("division by zero in '" + t + "'");
        }
        return sign * factor * std::numbers::pi / divisor;
    }

    std::uint64_t parse_uint(std::string_view token)
    {
        std::string t = trim(token);
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || ec != std::errc() || p != t.data() + t.size())
            throw std::invalid_argument("not a non-negative integer: '" + t + "'");
        return v;
    }

    std::vector<double> parse_real_list(std::string_view s)
    {
        std::vector<double> out;
        for (const auto &tok : split_list(s))
            out.push_back(parse_real(tok));
        return out;
    }

    std::string format_real(double value)
    {
        char buf[64];
        auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), value);
        return std::string(buf, p);
    }
}
