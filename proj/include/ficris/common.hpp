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

#ifndef FICRIS_COMMON_HPP
#define FICRIS_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <random>

namespace ficris
{
    using cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    using CVec = Eigen::VectorXcd;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Every random draw in the library comes from one of these. Streams are
    // never shared between trials; derive a fresh one with derive_seed.
    using RandomStream = std::mt19937_64;

    // SplitMix64 finalizer.
    constexpr std::uint64_t mix64(std::uint64_t x) noexcept
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Deterministic substream seed from a base seed and an ordered list of tags.
    constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags) noexcept
    {
        std::uint64_t s = mix64(base);
        for (auto t : tags)
            s = mix64(s ^ mix64(t + 0x632BE59BD9B4E019ULL));
        return s;
    }

    // Circularly-symmetric complex Gaussian sample with E|z|^2 = variance.
    inline cplx complex_gaussian(RandomStream &rng, double variance)
    {
        std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
        double re = nd(rng);
        double im = nd(rng);
        return {re, im};
    }
}

#endif
