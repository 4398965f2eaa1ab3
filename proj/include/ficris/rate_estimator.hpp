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

#ifndef FICRIS_RATE_ESTIMATOR_HPP
#define FICRIS_RATE_ESTIMATOR_HPP

#include "ficris/common.hpp"

namespace ficris
{
    struct NoiseModel
    {
        double sigma_sq = 1.0;           // receiver noise power
        double est_noise_sigma_sq = 1.0; // per-entry variance of one channel estimate error
        unsigned estimates_per_config = 1;

        // Unit transmit power and unit total path gain: sigma^2 = 10^(-snr_db/10).
        // The estimate error variance defaults to sigma^2.
        static NoiseModel from_snr_db(double snr_db, unsigned estimates_per_config = 1);

        bool noiseless() const { return est_noise_sigma_sq == 0.0; }
        void validate() const;
    };

    double sigma_sq_from_snr_db(double snr_db);

    // log2 det(I + Q^H Q / sigma^2) in bit/s/Hz.
    double achievable_rate(const CMat &q, double sigma_sq);

    // Q + mean of K i.i.d. CN(0, est_noise_sigma_sq) perturbations.
    CMat estimate_cascade(const CMat &q_true, const NoiseModel &model, RandomStream &rng);
}

#endif
