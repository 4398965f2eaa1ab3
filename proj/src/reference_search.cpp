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

#include "ficris/reference_search.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ficris
{
    void OracleSpec::validate() const
    {
        if (angle_resolution < 32)
            throw std::invalid_argument("OracleSpec: angle_resolution must be at least 32");
    }

    FicResult run_bas(const CascadeLink &link, std::size_t l1, std::size_t num_blocks, const NoiseModel &noise,
                      const NoiseStream &stream)
    {
        return run_multipath(link, num_blocks, GridSchedule{{l1}, 1}, noise, stream);
    }

    double rate_loss(double c_opt, double c_hat)
    {
        if (!(c_opt > 0.0))
            throw std::invalid_argument("rate_loss: reference rate must be positive");
        return (c_opt - c_hat) / c_opt;
    }

    namespace
    {
        // Exact rate of Q(u) = Q_frozen + sum over free k of exp(j 2 pi d u (k-1)) h_k g_k^T,
        // u = sin(theta) - sin(eta). The phase ramp is advanced by complex
        // recurrence and re-anchored with std::polar every anchor_period elements.
        class RampEvaluator
        {
        public:
            static constexpr std::size_t anchor_period = 16;

            RampEvaluator(const CascadeLink &link, const RisConfig &base, double sigma_sq)
                : rows_(static_cast<std::size_t>(link.h.rows())), cols_(static_cast<std::size_t>(link.g.cols())),
                  spacing_(link.ris.spacing_over_lambda), sigma_sq_(sigma_sq)
            {
                const std::size_t n = link.ris.num_elements;
                const std::size_t cells = rows_ * cols_;
                const CVec frozen_phasors = base.phasors();
                q_frozen_.assign(cells, cplx{});
                terms_.assign(n * cells, cplx{});
                free_.assign(n, false);
                for (std::size_t k = 0; k < n; ++k)
                {
                    const auto kk = static_cast<Eigen::Index>(k);
                    free_[k] = !base.frozen_mask[k];
                    for (std::size_t j = 0; j < cols_; ++j)
                        for (std::size_t i = 0; i < rows_; ++i)
                        {
                            const cplx v = link.h(static_cast<Eigen::Index>(i), kk) * link.g(kk, static_cast<Eigen::Index>(j));
                            if (free_[k])
                                terms_[k * cells + j * rows_ + i] = v;
                            else
                                q_frozen_[j * rows_ + i] += frozen_phasors(kk) * v;
                        }
                }
                q_.resize(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
            }

            double rate(double u)
            {
                const double step = two_pi * spacing_ * u;
                const std::size_t cells = rows_ * cols_;
                std::vector<cplx> &acc = acc_;
                acc = q_frozen_;
                const cplx w = std::polar(1.0, step);
                cplx z{1.0, 0.0};
                for (std::size_t k = 0; k < free_.size(); ++k)
                {
                    if (k % anchor_period == 0)
                        z = std::polar(1.0, step * static_cast<double>(k));
                    if (free_[k])
                    {
                        const cplx *t = &terms_[k * cells];
                        const double zr = z.real(), zi = z.imag();
                        for (std::size_t c = 0; c < cells; ++c)
                            acc[c] += cplx(zr * t[c].real() - zi * t[c].imag(), zr * t[c].imag() + zi * t[c].real());
                    }
                    z = cplx(z.real() * w.real() - z.imag() * w.imag(), z.real() * w.imag() + z.imag() * w.real());
                }
                for (std::size_t j = 0; j < cols_; ++j)
                    for (std::size_t i = 0; i < rows_; ++i)
                        q_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc[j * rows_ + i];
                return achievable_rate(q_, sigma_sq_);
            }

        private:
            std::size_t rows_, cols_;
            double spacing_;
            double sigma_sq_;
            std::vector<cplx> q_frozen_;
            std::vector<cplx> terms_;
            std::vector<bool> free_;
            std::vector<cplx> acc_;
            CMat q_;
        };

        struct GridBest
        {
            AnglePair pair;
            double rate = -1.0;
        };

        void offer(GridBest &best, const AnglePair &pair, double rate)
        {
            if (rate > best.rate)
                best = {pair, rate};
        }

        AnglePair search_step(const CascadeLink &link, const RisConfig &base, const OracleSpec &spec, double sigma_sq)
        {
            RampEvaluator eval(link, base, sigma_sq);
            const std::size_t res = spec.angle_resolution;
            double spacing = pi / static_cast<double>(res);

            std::vector<double> angle(res), sine(res);
            for (std::size_t j = 0; j < res; ++j)
            {
                angle[j] = -pi / 2.0 + static_cast<double>(j) * spacing;
                sine[j] = std::sin(angle[j]);
            }

            GridBest best;
            for (std::size_t a = 0; a < res; ++a)
                for (std::size_t b = 0; b < res; ++b)
                    offer(best, {angle[a], angle[b]}, eval.rate(sine[a] - sine[b]));

            constexpr int half = 10;
            for (std::size_t round = 0; round < spec.refine_rounds; ++round)
            {
                spacing /= 10.0;
                const AnglePair center = best.pair;
                for (int a = -half; a <= half; ++a)
                    for (int b = -half; b <= half; ++b)
                    {
                        AnglePair p{std::clamp(center.theta + a * spacing, -pi / 2.0, pi / 2.0),
                                    std::clamp(center.eta + b * spacing, -pi / 2.0, pi / 2.0)};
                        offer(best, p, eval.rate(std::sin(p.theta) - std::sin(p.eta)));
                    }
            }
            return best.pair;
        }
    }

    OracleResult oracle_optimal_rate(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                     double sigma_sq)
    {
        link.validate();
        spec.validate();
        const std::size_t n = link.num_ris_elements();
        if (num_blocks < 1 || n % num_blocks != 0)
            throw std::invalid_argument("oracle_optimal_rate: " + std::to_string(num_blocks) +
                                        " blocks do not divide " + std::to_string(n) + " RIS elements");

        OracleResult out;
        RisConfig config(n);
        for (std::size_t m = 1; m <= num_blocks; ++m)
        {
            AnglePair pair = search_step(link, config, spec, sigma_sq);
            out.per_block_angles.push_back(pair);
            config = freeze_block(overlay_configs(config, config_from_angles(pair, link.ris)), m, num_blocks);
        }
        out.c_opt = achievable_rate(compose_cascade(link.h, config, link.g), sigma_sq);
        out.config = std::move(config);
        return out;
    }

    // ---------- cache ----------

    namespace
    {
        struct Fnv1a
        {
            std::uint64_t h = 0xcbf29ce484222325ULL;

            void bytes(const void *p, std::size_t n)
            {
                const auto *c = static_cast<const unsigned char *>(p);
                for (std::size_t i = 0; i < n; ++i)
                {
                    h ^= c[i];
                    h *= 0x100000001b3ULL;
                }
            }
            void u64(std::uint64_t v) { bytes(&v, sizeof v); }
            void real(double v) { bytes(&v, sizeof v); }
            void matrix(const CMat &m)
            {
                u64(static_cast<std::uint64_t>(m.rows()));
                u64(static_cast<std::uint64_t>(m.cols()));
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                    for (Eigen::Index i = 0; i < m.rows(); ++i)
                    {
                        real(m(i, j).real());
                        real(m(i, j).imag());
                    }
            }
        };

        std::string hex_real(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%a", v);
            return buf;
        }

        double read_hex_real(const std::string &s)
        {
            char *end = nullptr;
            double v = std::strtod(s.c_str(), &end);
            if (end == s.c_str() || *end != '\0')
                throw std::runtime_error("oracle cache: bad number '" + s + "'");
            return v;
        }
    }

    OracleCache::OracleCache(std::filesystem::path directory) : directory_(std::move(directory))
    {
        if (directory_.empty())
            throw std::invalid_argument("OracleCache: empty directory");
    }

    std::uint64_t OracleCache::key(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                   double sigma_sq)
    {
        Fnv1a f;
        f.u64(static_cast<std::uint64_t>(format_version));
        f.matrix(link.h);
        f.matrix(link.g);
        f.real(link.ris.spacing_over_lambda);
        f.u64(num_blocks);
        f.u64(spec.angle_resolution);
        f.u64(spec.refine_rounds);
        f.real(sigma_sq);
        return f.h;
    }

    std::filesystem::path OracleCache::file_for(std::uint64_t key) const
    {
        char name[64];
        std::snprintf(name, sizeof name, "oracle-v%d-%016" PRIx64 ".txt", format_version, key);
        return directory_ / name;
    }

    std::optional<OracleResult> OracleCache::load(std::uint64_t key) const
    {
        std::ifstream in(file_for(key));
        if (!in)
            return std::nullopt;

        std::string magic, tag;
        int version = 0;
        std::string key_text;
        in >> magic >> version >> tag >> key_text;
        char expected_key[32];
        std::snprintf(expected_key, sizeof expected_key, "%016" PRIx64, key);
        if (magic != "ficris-oracle-cache" || version != format_version || tag != "key" || key_text != expected_key)
            return std::nullopt;

        OracleResult r;
        std::string word, value;
        std::size_t elements = 0, blocks = 0;
        in >> word >> value;
        if (word != "c_opt")
            return std::nullopt;
        r.c_opt = read_hex_real(value);
        in >> word >> blocks;
        if (word != "blocks")
            return std::nullopt;
        for (std::size_t m = 0; m < blocks; ++m)
        {
            std::string th, et;
            in >> word >> th >> et;
            if (word != "angles")
                return std::nullopt;
            r.per_block_angles.push_back({read_hex_real(th), read_hex_real(et)});
        }
        in >> word >> elements;
        if (word != "elements")
            return std::nullopt;
        for (std::size_t k = 0; k < elements; ++k)
        {
            std::size_t block = 0;
            int frozen = 0;
            in >> value >> block >> frozen;
            r.config.phases.push_back(read_hex_real(value));
            r.config.block_assignment.push_back(block);
            r.config.frozen_mask.push_back(frozen != 0);
        }
        if (!in)
            return std::nullopt;
        r.config.validate();
        return r;
    }

    void OracleCache::store(std::uint64_t key, const OracleResult &result) const
    {
        std::filesystem::create_directories(directory_);
        const auto final_path = file_for(key);
        auto tmp_path = final_path;
        tmp_path += ".tmp";
        {
            std::ofstream out(tmp_path, std::ios::trunc);
            if (!out)
                throw std::runtime_error("oracle cache: cannot write " + tmp_path.string());
            char key_text[32];
            std::snprintf(key_text, sizeof key_text, "%016" PRIx64, key);
            out << "ficris-oracle-cache " << format_version << "\nkey " << key_text << "\n";
            out << "c_opt " << hex_real(result.c_opt) << "\n";
            out << "blocks " << result.per_block_angles.size() << "\n";
            for (const auto &p : result.per_block_angles)
                out << "angles " << hex_real(p.theta) << ' ' << hex_real(p.eta) << "\n";
            out << "elements " << result.config.size() << "\n";
            for (std::size_t k = 0; k < result.config.size(); ++k)
                out << hex_real(result.config.phases[k]) << ' ' << result.config.block_assignment[k] << ' '
                    << (result.config.frozen_mask[k] ? 1 : 0) << "\n";
            if (!out)
                throw std::runtime_error("oracle cache: write failed for " + tmp_path.string());
        }
        std::filesystem::rename(tmp_path, final_path);
    }

    OracleResult OracleCache::get_or_compute(const CascadeLink &link, std::size_t num_blocks, const OracleSpec &spec,
                                             double sigma_sq, bool *was_cached) const
    {
        const auto k = key(link, num_blocks, spec, sigma_sq);
        if (auto hit = load(k))
        {
            if (was_cached)
                *was_cached = true;
            return *hit;
        }
        OracleResult r = oracle_optimal_rate(link, num_blocks, spec, sigma_sq);
        store(k, r);
        if (was_cached)
            *was_cached = false;
        return r;
    }
}
