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

#include <catch2/catch_amalgamated.hpp>

#include "ficris/ris_config.hpp"
#include "test_support.hpp"

#include <set>
#include <sstream>

using namespace ficris;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

static std::set<std::size_t> frozen_indices(const RisConfig &c)
{
    std::set<std::size_t> s;
    for (std::size_t k = 0; k < c.size(); ++k)
        if (c.frozen_mask[k])
            s.insert(k + 1);
    return s;
}

TEST_CASE("wrap_phase - lands in [0, 2 pi)")
{
    CHECK(wrap_phase(0.0) == 0.0);
    CHECK_THAT(wrap_phase(-pi / 2.0), WithinAbs(1.5 * pi, 1e-15));
    CHECK_THAT(wrap_phase(5.0 * pi), WithinAbs(pi, 1e-12));
    CHECK(wrap_phase(two_pi) == 0.0);
    CHECK(wrap_phase(-1e-18) < two_pi);
    RandomStream rng(2);
    std::uniform_real_distribution<double> d(-1e4, 1e4);
    for (int i = 0; i < 1000; ++i)
    {
        double w = wrap_phase(d(rng));
        REQUIRE(w >= 0.0);
        REQUIRE(w < two_pi);
    }
}

TEST_CASE("config_from_angles - examples")
{
    auto equal = config_from_angles({0.7, 0.7}, {8, 0.5});
    for (double p : equal.phases)
        CHECK(p == 0.0);
    CHECK(equal.num_frozen() == 0);
    for (auto b : equal.block_assignment)
        CHECK(b == 1);

    auto c = config_from_angles({pi / 2.0, 0.0}, {4, 0.5});
    CHECK_THAT(c.phases[1], WithinAbs(pi, 1e-15));
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("config_from_angles - alignment identity")
{
    RandomStream rng(31);
    std::uniform_real_distribution<double> a(-pi / 2.0, pi / 2.0);
    for (int t = 0; t < 100; ++t)
    {
        ArrayGeometry ris{120, 0.5};
        double theta_h = a(rng), eta_g = a(rng);
        RisConfig c = config_from_angles({theta_h, eta_g}, ris);
        cplx s = array_response(theta_h, ris).adjoint() * c.phasors().asDiagonal() * array_response(eta_g, ris);
        CHECK_THAT(std::abs(s), WithinRel(120.0, 1e-9));
    }
}

TEST_CASE("config_from_angles - aligned single-path cascade reaches the full array gain")
{
    RandomStream rng(12);
    auto sc = ficris_test::single_path_scenario(64);
    for (int t = 0; t < 30; ++t)
    {
        auto p = sample_channel_pair(sc, rng);
        auto link = CMat(channel_h(sc, p.h));
        RisConfig c = config_from_angles({p.h.departure_angles[0], p.g.arrival_angles[0]}, sc.ris);
        CMat q = compose_cascade(link, c, channel_g(sc, p.g));
        Eigen::JacobiSVD<CMat> svd(q);
        const double expected = std::abs(p.g.gains[0] * p.h.gains[0]) * 64.0 * std::sqrt(8.0);
        CHECK_THAT(svd.singularValues()(0), WithinRel(expected, 1e-9));
    }
}

TEST_CASE("overlay_configs - frozen elements keep the base phases")
{
    RisConfig base(4), update(4);
    for (auto &p : update.phases)
        p = 1.0;
    CHECK(overlay_configs(base, update).phases == update.phases);

    RisConfig all = base;
    all.frozen_mask.assign(4, true);
    CHECK(overlay_configs(all, update).phases == base.phases);

    // M = 2, N_I = 4, elements {1, 3} frozen at pi, update all zero.
    RisConfig b(4);
    b.phases = {pi, 0.3, pi, 0.3};
    b = freeze_block(b, 1, 2);
    RisConfig zero(4);
    auto out = overlay_configs(b, zero);
    CHECK(out.phases == std::vector<double>{pi, 0.0, pi, 0.0});
    CHECK(out.frozen_mask == b.frozen_mask);
    CHECK(out.block_assignment == b.block_assignment);

    CHECK(overlay_configs(overlay_configs(b, update), update).phases == overlay_configs(b, update).phases);
    CHECK_THROWS_AS(overlay_configs(RisConfig(4), RisConfig(5)), std::invalid_argument);
}

TEST_CASE("freeze_block - stride M reading")
{
    RisConfig c(6);
    CHECK(frozen_indices(freeze_block(c, 1, 3)) == std::set<std::size_t>{1, 4});
    CHECK(frozen_indices(freeze_block(c, 2, 3)) == std::set<std::size_t>{2, 5});
    CHECK(frozen_indices(freeze_block(c, 1, 1)) == std::set<std::size_t>{1, 2, 3, 4, 5, 6});

    auto b = freeze_block(c, 2, 3);
    CHECK(b.block_assignment[1] == 2);
    CHECK(b.block_assignment[4] == 2);

    CHECK_THROWS_AS(freeze_block(c, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(freeze_block(c, 4, 3), std::invalid_argument);
    CHECK_THROWS_AS(freeze_block(c, 1, 4), std::invalid_argument);
}

TEST_CASE("freeze_block - blocks partition the array")
{
    for (std::size_t m_count : {1u, 2u, 3u, 4u, 5u, 6u, 8u, 10u, 12u})
    {
        RisConfig c(120);
        std::vector<int> hits(120, 0);
        for (std::size_t m = 1; m <= m_count; ++m)
        {
            auto before = c.frozen_mask;
            c = freeze_block(c, m, m_count);
            for (std::size_t k = 0; k < 120; ++k)
                if (c.frozen_mask[k] && !before[k])
                    hits[k]++;
        }
        for (int h : hits)
            REQUIRE(h == 1);
        for (std::size_t m = 1; m <= m_count; ++m)
            CHECK(static_cast<std::size_t>(std::count(c.block_assignment.begin(), c.block_assignment.end(), m)) ==
                  120 / m_count);
    }
}

TEST_CASE("quantize_phases - nearest level")
{
    RisConfig c(3);
    c.phases = {0.0, pi, 0.3 * pi};
    auto q1 = quantize_phases(c, 1);
    CHECK(q1.phases[0] == 0.0);
    CHECK(q1.phases[1] == pi);
    auto q2 = quantize_phases(c, 2);
    CHECK(q2.phases[2] == pi / 2.0);

    RisConfig top(1);
    top.phases = {two_pi - 0.01};
    CHECK(quantize_phases(top, 2).phases[0] == 0.0);
    CHECK_THROWS_AS(quantize_phases(c, 0), std::invalid_argument);
}

TEST_CASE("quantize_phases - converges to identity")
{
    RandomStream rng(9);
    std::uniform_real_distribution<double> d(0.0, two_pi);
    RisConfig c(500);
    for (auto &p : c.phases)
        p = d(rng);
    auto q = quantize_phases(c, 16);
    double worst = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k)
    {
        double e = std::abs(q.phases[k] - c.phases[k]);
        worst = std::max(worst, std::min(e, two_pi - e));
        REQUIRE(q.phases[k] >= 0.0);
        REQUIRE(q.phases[k] < two_pi);
    }
    CHECK(worst <= pi / 65536.0);
}

TEST_CASE("config CSV round trip")
{
    auto c = freeze_block(config_from_angles({0.3, -0.4}, {12, 0.5}), 2, 3);
    std::stringstream ss;
    write_config_csv(ss, c);
    auto back = read_config_csv(ss);
    CHECK(back.phases == c.phases);
    CHECK(back.block_assignment == c.block_assignment);
    CHECK(back.frozen_mask == c.frozen_mask);

    std::stringstream bad("index,phase,block,frozen\n1,7.0,1,0\n");
    CHECK_THROWS_AS(read_config_csv(bad), std::invalid_argument);
    std::stringstream bad_flag("index,phase,block,frozen\n1,0.5,1,2\n");
    CHECK_THROWS_AS(read_config_csv(bad_flag), std::invalid_argument);
}
