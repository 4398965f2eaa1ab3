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

#ifndef FICRIS_CHANNEL_MODEL_HPP
#define FICRIS_CHANNEL_MODEL_HPP

#include "ficris/common.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace ficris
{
    struct RisConfig;

    // Uniform linear array (or a line of RIS elements).
    struct ArrayGeometry
    {
        std::size_t num_elements = 1;
        double spacing_over_lambda = 0.5; // d / lambda

        void validate() const;
    };

    // Closed interval of angles in radians.
    struct AngleRange
    {
        double lo = 0.0;
        double hi = 0.0;

        bool contains(double angle) const { return angle >= lo && angle <= hi; }
        void validate() const;
    };

    // Propagation paths of one channel. Arrival angles are at the receiving
    // array, departure angles at the transmitting one.
    struct PathSet
    {
        std::vector<cplx> gains;
        std::vector<double> departure_angles;
        std::vector<double> arrival_angles;

        std::size_t size() const { return gains.size(); }
        void validate() const;
    };

    // Random-channel scenario. G runs S -> I, H runs I -> D.
    //
    // Default angle ranges:
    //   theta_g (AoD at S)  in [-pi, pi]
    //   eta_g   (AoA at I)  in [-pi/2, pi/2]
    //   theta_h (AoD at I)  in [-pi/2, pi/2]
    //   eta_h   (AoA at D)  in [-pi/3, pi/3]
    struct ChannelScenario
    {
        ArrayGeometry source{2, 0.5};
        ArrayGeometry ris{120, 0.5};
        ArrayGeometry destination{4, 0.5};
        std::size_t num_paths_g = 3;
        std::size_t num_paths_h = 3;
        AngleRange theta_g{-pi, pi};
        AngleRange eta_g{-pi / 2.0, pi / 2.0};
        AngleRange theta_h{-pi / 2.0, pi / 2.0};
        AngleRange eta_h{-pi / 3.0, pi / 3.0};
        std::vector<double> power_profile_g; // empty = equal power 1/L
        std::vector<double> power_profile_h;
        std::uint64_t seed = 1;

        std::vector<double> effective_profile_g() const;
        std::vector<double> effective_profile_h() const;
        void validate() const;
    };

    struct ChannelPair
    {
        PathSet g; // S -> I
        PathSet h; // I -> D
    };

    // [alpha(angle)]_n = exp(j 2 pi (d/lambda) (n-1) sin(angle))
    CVec array_response(double angle, const ArrayGeometry &geometry);

    // Columns are array responses, one per angle.
    CMat steering_matrix(const std::vector<double> &angles, const ArrayGeometry &geometry);

    // sum_l rho_l alpha_rx(arrival_l) alpha_tx(departure_l)^H, rx.num_elements x tx.num_elements
    CMat synthesize_channel(const PathSet &paths, const ArrayGeometry &rx_geometry, const ArrayGeometry &tx_geometry);

    // Same channel in the factored form A(arrival) diag(rho) A(departure)^H.
    CMat synthesize_channel_factored(const PathSet &paths, const ArrayGeometry &rx_geometry, const ArrayGeometry &tx_geometry);

    ChannelPair sample_channel_pair(const ChannelScenario &scenario, RandomStream &rng);

    // G is N_I x N_S, H is N_D x N_I
    CMat channel_g(const ChannelScenario &scenario, const PathSet &paths);
    CMat channel_h(const ChannelScenario &scenario, const PathSet &paths);

    // Q = H diag(exp(j phi)) G
    CMat compose_cascade(const CMat &h, const RisConfig &config, const CMat &g);

    // Plain-text "key = value" form of a scenario. Keys are listed in the README.
    std::string scenario_to_text(const ChannelScenario &scenario);
    ChannelScenario scenario_from_text(const std::string &text);

    // CSV rows "l,re,im,theta,eta" with theta the departure and eta the arrival angle.
    void write_paths_csv(std::ostream &os, const PathSet &paths);
    PathSet read_paths_csv(std::istream &is);
}

#endif
