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

#include "ficris/rate_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ficris
{
    double sigma_sq_from_snr_db(double snr_db)
    {
        return std::pow(10.0, -snr_db / 10.0);
    }

    NoiseModel NoiseModel::from_snr_db(double snr_db, unsigned estimates_per_config)
    {
        const double s = sigma_sq_from_snr_db(snr_db);
        return NoiseModel{s, s, estimates_per_config};
    }

    void NoiseModel::validate() const
    {
        if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq))
            throw std::invalid_argument("NoiseModel: sigma_sq must be positive");
        if (!(est_noise_sigma_sq >= 0.0) || !std::isfinite(est_noise_sigma_sq))
            throw std::invalid_argument("NoiseModel: est_noise_sigma_sq must be non-negative");
        if (estimates_per_config < 1)
            throw std::invalid_argument("NoiseModel: estimates_per_config must be at least 1");
    }

    namespace
    {
        constexpr Eigen::Index max_small_dim = 8;
        using SmallMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, max_small_dim, max_small_dim>;

        // log2 det(I + gram / sigma_sq) through a Cholesky factor.
        template <typename Mat>
        double log2_det_shifted(Mat &gram, double sigma_sq)
        {
            gram /= sigma_sq;
            gram.diagonal().array() += 1.0;
            Eigen::LLT<Mat> llt(gram);
            if (llt.info() != Eigen::Success)
                throw std::runtime_error("achievable_rate: Gram matrix is not positive definite");
            double log_det = 0.0;
            for (Eigen::Index i = 0; i < gram.rows(); ++i)
                log_det += std::log(llt.matrixLLT()(i, i).real());
            return std::max(0.0, 2.0 * log_det / std::numbers::ln2);
        }
    }

    double achievable_rate(const CMat &q, double sigma_sq)
    {
        if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq))
            throw std::invalid_argument("achievable_rate: sigma_sq must be positive");
        if (!q.allFinite())
            throw std::invalid_argument("achievable_rate: channel matrix has non-finite entries");
        if (q.size() == 0)
            return 0.0;

        // det(I + Q^H Q / s) = det(I + Q Q^H / s); factor the smaller Gram matrix.
        const bool use_cols = q.cols() <= q.rows();
        const Eigen::Index dim = use_cols ? q.cols() : q.rows();
        if (dim <= max_small_dim)
        {
            SmallMat gram = use_cols ? SmallMat(q.adjoint() * q) : SmallMat(q * q.adjoint());
            return log2_det_shifted(gram, sigma_sq);
        }
        CMat gram = use_cols ? CMat(q.adjoint() * q) : CMat(q * q.adjoint());
        return log2_det_shifted(gram, sigma_sq);
    }

    CMat estimate_cascade(const CMat &q_true, const NoiseModel &model, RandomStream &rng)
    {
        model.validate();
        if (model.noiseless())
            return q_true;
        CMat sum = CMat::Zero(q_true.rows(), q_true.cols());
        for (unsigned r = 0; r < model.estimates_per_config; ++r)
            for (Eigen::Index j = 0; j < sum.cols(); ++j)
                for (Eigen::Index i = 0; i < sum.rows(); ++i)
                    sum(i, j) += complex_gaussian(rng, model.est_noise_sigma_sq);
        return q_true + sum / static_cast<double>(model.estimates_per_config);
    }
}
