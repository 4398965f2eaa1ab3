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

#include "ficris/channel_model.hpp"
#include "ficris/ris_config.hpp"

#include "key_value.hpp"

#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ficris
{
    void ArrayGeometry::validate() const
    {
        if (num_elements < 1)
            throw std::invalid_argument("ArrayGeometry: num_elements must be at least 1");
        if (!(spacing_over_lambda > 0.0) || !std::isfinite(spacing_over_lambda))
            throw std::invalid_argument("ArrayGeometry: spacing_over_lambda must be positive");
    }

    void AngleRange::validate() const
    {
        if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi)
            throw std::invalid_argument("AngleRange: bounds must be finite with lo <= hi");
    }

    void PathSet::validate() const
    {
        if (gains.empty())
            throw std::invalid_argument("PathSet: at least one path is required");
        if (departure_angles.size() != gains.size() || arrival_angles.size() != gains.size())
            throw std::invalid_argument("PathSet: gains and angle lists differ in length");
        for (std::size_t l = 0; l < gains.size(); ++l)
            if (!std::isfinite(departure_angles[l]) || !std::isfinite(arrival_angles[l]) ||
                !std::isfinite(gains[l].real()) || !std::isfinite(gains[l].imag()))
                throw std::invalid_argument("PathSet: non-finite entry in path " + std::to_string(l + 1));
    }

    static std::vector<double> equal_profile(std::size_t n)
    {
        return std::vector<double>(n, 1.0 / static_cast<double>(n));
    }

    std::vector<double> ChannelScenario::effective_profile_g() const
    {
        return power_profile_g.empty() ? equal_profile(num_paths_g) : power_profile_g;
    }

    std::vector<double> ChannelScenario::effective_profile_h() const
    {
        return power_profile_h.empty() ? equal_profile(num_paths_h) : power_profile_h;
    }

    static void check_profile(const std::vector<double> &profile, std::size_t n, const char *name)
    {
        if (profile.empty())
            return;
        if (profile.size() != n)
            throw std::invalid_argument(std::string("ChannelScenario: ") + name + " needs one entry per path");
        double sum = 0.0;
        for (double p : profile)
        {
            if (!(p > 0.0))
                throw std::invalid_argument(std::string("ChannelScenario: ") + name + " entries must be positive");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument(std::string("ChannelScenario: ") + name + " must sum to 1");
    }

    void ChannelScenario::validate() const
    {
        source.validate();
        ris.validate();
        destination.validate();
        if (num_paths_g < 1 || num_paths_h < 1)
            throw std::invalid_argument("ChannelScenario: path counts must be at least 1");
        theta_g.validate();
        eta_g.validate();
        theta_h.validate();
        eta_h.validate();
        check_profile(power_profile_g, num_paths_g, "power_profile_g");
        check_profile(power_profile_h, num_paths_h, "power_profile_h");
    }

    CVec array_response(double angle, const ArrayGeometry &geometry)
    {
        const auto n = static_cast<Eigen::Index>(geometry.num_elements);
        const double step = two_pi * geometry.spacing_over_lambda * std::sin(angle);
        CVec a(n);
        for (Eigen::Index k = 0; k < n; ++k)
            a(k) = std::polar(1.0, step * static_cast<double>(k));
        return a;
    }

    CMat steering_matrix(const std::vector<double> &angles, const ArrayGeometry &geometry)
    {
        CMat a(static_cast<Eigen::Index>(geometry.num_elements), static_cast<Eigen::Index>(angles.size()));
        for (std::size_t l = 0; l < angles.size(); ++l)
            a.col(static_cast<Eigen::Index>(l)) = array_response(angles[l], geometry);
        return a;
    }

    CMat synthesize_channel(const PathSet &paths, const ArrayGeometry &rx_geometry, const ArrayGeometry &tx_geometry)
    {
        paths.validate();
        rx_geometry.validate();
        tx_geometry.validate();
        CMat out = CMat::Zero(static_cast<Eigen::Index>(rx_geometry.num_elements),
                              static_cast<Eigen::Index>(tx_geometry.num_elements));
        for (std::size_t l = 0; l < paths.size(); ++l)
        {
            CVec rx = array_response(paths.arrival_angles[l], rx_geometry);
            CVec tx = array_response(paths.departure_angles[l], tx_geometry);
            out.noalias() += paths.gains[l] * rx * tx.adjoint();
        }
        return out;
    }

    CMat synthesize_channel_factored(const PathSet &paths, const ArrayGeometry &rx_geometry,
                                     const ArrayGeometry &tx_geometry)
    {
        paths.validate();
        rx_geometry.validate();
        tx_geometry.validate();
        CMat a_rx = steering_matrix(paths.arrival_angles, rx_geometry);
        CMat a_tx = steering_matrix(paths.departure_angles, tx_geometry);
        CVec rho = Eigen::Map<const CVec>(paths.gains.data(), static_cast<Eigen::Index>(paths.size()));
        return a_rx * rho.asDiagonal() * a_tx.adjoint();
    }

    static PathSet sample_paths(std::size_t n, const std::vector<double> &profile, const AngleRange &departure,
                                const AngleRange &arrival, RandomStream &rng)
    {
        PathSet p;
        p.gains.reserve(n);
        p.departure_angles.reserve(n);
        p.arrival_angles.reserve(n);
        std::uniform_real_distribution<double> dep(departure.lo, departure.hi);
        std::uniform_real_distribution<double> arr(arrival.lo, arrival.hi);
        for (std::size_t l = 0; l < n; ++l)
        {
            p.gains.push_back(complex_gaussian(rng, profile[l]));
            p.departure_angles.push_back(departure.lo == departure.hi ? departure.lo : dep(rng));
            p.arrival_angles.push_back(arrival.lo == arrival.hi ? arrival.lo : arr(rng));
        }
        return p;
    }

    ChannelPair sample_channel_pair(const ChannelScenario &scenario, RandomStream &rng)
    {
        scenario.validate();
        ChannelPair pair;
        pair.g = sample_paths(scenario.num_paths_g, scenario.effective_profile_g(), scenario.theta_g, scenario.eta_g, rng);
        pair.h = sample_paths(scenario.num_paths_h, scenario.effective_profile_h(), scenario.theta_h, scenario.eta_h, rng);
        return pair;
    }

    CMat channel_g(const ChannelScenario &scenario, const PathSet &paths)
    {
        return synthesize_channel(paths, scenario.ris, scenario.source);
    }

    CMat channel_h(const ChannelScenario &scenario, const PathSet &paths)
    {
        return synthesize_channel(paths, scenario.destination, scenario.ris);
    }

    CMat compose_cascade(const CMat &h, const RisConfig &config, const CMat &g)
    {
        const auto n = static_cast<Eigen::Index>(config.size());
        if (h.cols() != n || g.rows() != n)
            throw std::invalid_argument("compose_cascade: H is " + std::to_string(h.rows()) + "x" +
                                        std::to_string(h.cols()) + ", G is " + std::to_string(g.rows()) + "x" +
                                        std::to_string(g.cols()) + ", config has " + std::to_string(n) + " phases");
        return h * config.phasors().asDiagonal() * g;
    }

    // ---------- text formats ----------

    static std::string range_text(const AngleRange &r)
    {
        return detail::format_real(r.lo) + ", " + detail::format_real(r.hi);
    }

    static std::string list_text(const std::vector<double> &v)
    {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + detail::format_real(v[i]);
        return s;
    }

    std::string scenario_to_text(const ChannelScenario &sc)
    {
        std::ostringstream os;
        os << "source_elements = " << sc.source.num_elements << "\n"
           << "ris_elements = " << sc.ris.num_elements << "\n"
           << "destination_elements = " << sc.destination.num_elements << "\n"
           << "source_spacing = " << detail::format_real(sc.source.spacing_over_lambda) << "\n"
           << "ris_spacing = " << detail::format_real(sc.ris.spacing_over_lambda) << "\n"
           << "destination_spacing = " << detail::format_real(sc.destination.spacing_over_lambda) << "\n"
           << "paths_g = " << sc.num_paths_g << "\n"
           << "paths_h = " << sc.num_paths_h << "\n"
           << "theta_g_range = " << range_text(sc.theta_g) << "\n"
           << "eta_g_range = " << range_text(sc.eta_g) << "\n"
           << "theta_h_range = " << range_text(sc.theta_h) << "\n"
           << "eta_h_range = " << range_text(sc.eta_h) << "\n";
        if (!sc.power_profile_g.empty())
            os << "power_profile_g = " << list_text(sc.power_profile_g) << "\n";
        if (!sc.power_profile_h.empty())
            os << "power_profile_h = " << list_text(sc.power_profile_h) << "\n";
        os << "scenario_seed = " << sc.seed << "\n";
        return os.str();
    }

    namespace detail
    {
        bool apply_scenario_key(ChannelScenario &sc, const std::string &key, const std::string &value)
        {
            auto range = [&](AngleRange &r) {
                auto v = parse_real_list(value);
                if (v.size() != 2)
                    throw std::invalid_argument(key + ": expected 'lo, hi'");
                r = {v[0], v[1]};
            };
            if (key == "source_elements")
                sc.source.num_elements = parse_uint(value);
            else if (key == "ris_elements")
                sc.ris.num_elements = parse_uint(value);
            else if (key == "destination_elements")
                sc.destination.num_elements = parse_uint(value);
            else if (key == "spacing_over_lambda")
            {
                double d = parse_real(value);
                sc.source.spacing_over_lambda = sc.ris.spacing_over_lambda = sc.destination.spacing_over_lambda = d;
            }
            else if (key == "source_spacing")
                sc.source.spacing_over_lambda = parse_real(value);
            else if (key == "ris_spacing")
                sc.ris.spacing_over_lambda = parse_real(value);
            else if (key == "destination_spacing")
                sc.destination.spacing_over_lambda = parse_real(value);
            else if (key == "paths_g")
                sc.num_paths_g = parse_uint(value);
            else if (key == "paths_h")
                sc.num_paths_h = parse_uint(value);
            else if (key == "theta_g_range")
                range(sc.theta_g);
            else if (key == "eta_g_range")
                range(sc.eta_g);
            else if (key == "theta_h_range")
                range(sc.theta_h);
            else if (key == "eta_h_range")
                range(sc.eta_h);
            else if (key == "power_profile_g")
                sc.power_profile_g = parse_real_list(value);
            else if (key == "power_profile_h")
                sc.power_profile_h = parse_real_list(value);
            else if (key == "scenario_seed")
                sc.seed = parse_uint(value);
            else
                return false;
            return true;
        }
    }

    ChannelScenario scenario_from_text(const std::string &text)
    {
        ChannelScenario sc;
        for (const auto &e : detail::parse_key_values(text))
        {
            try
            {
                if (!detail::apply_scenario_key(sc, e.key, e.value))
                    throw std::invalid_argument("unknown key '" + e.key + "'");
            }
            catch (const std::invalid_argument &ex)
            {
                throw std::invalid_argument("line " + std::to_string(e.line) + ": " + ex.what());
            }
        }
        sc.validate();
        return sc;
    }

    void write_paths_csv(std::ostream &os, const PathSet &paths)
    {
        os << "l,re,im,theta,eta\n";
        for (std::size_t l = 0; l < paths.size(); ++l)
            os << (l + 1) << ',' << detail::format_real(paths.gains[l].real()) << ','
               << detail::format_real(paths.gains[l].imag()) << ',' << detail::format_real(paths.departure_angles[l])
               << ',' << detail::format_real(paths.arrival_angles[l]) << '\n';
    }

    PathSet read_paths_csv(std::istream &is)
    {
        PathSet p;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            std::string t = detail::trim(line);
            if (t.empty() || (line_no == 1 && t.rfind("l,", 0) == 0))
                continue;
            std::vector<std::string> cells;
            std::stringstream ss(t);
            for (std::string c; std::getline(ss, c, ',');)
                cells.push_back(c);
            if (cells.size() != 5)
                throw std::invalid_argument("paths csv line " + std::to_string(line_no) + ": expected 5 columns");
            if (detail::parse_uint(cells[0]) != p.size() + 1)
                throw std::invalid_argument("paths csv line " + std::to_string(line_no) + ": path index out of order");
            p.gains.emplace_back(detail::parse_real(cells[1]), detail::parse_real(cells[2]));
            p.departure_angles.push_back(detail::parse_real(cells[3]));
            p.arrival_angles.push_back(detail::parse_real(cells[4]));
        }
        p.validate();
        return p;
    }
}
