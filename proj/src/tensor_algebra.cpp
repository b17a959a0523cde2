/* Copyright 2026 The sigkit Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */
#include "sigkit/tensor_algebra.hpp"

#include <cmath>

namespace sigkit {
    namespace {
        void fill_segment_signature(std::span<const double> x, TensorSeries& out) {
            out.level(0)[0] = 1.0;
            const std::size_t stride = x.size();
            for (int k = 1; k <= out.max_level(); ++k) {
                auto prev = out.level(k - 1);
                auto cur = out.level(k);
                const double inv = 1.0 / k;
                for (std::size_t u = 0; u < prev.size(); ++u) {
                    const double p = prev[u] * inv;
                    for (std::size_t v = 0; v < stride; ++v) {
                        cur[u * stride + v] = p * x[v];
                    }
                }
            }
        }
    }  // namespace

    std::size_t signature_length(int d, int m) {
        std::size_t out = 0;
        for (int k = 1; k <= m; ++k) {
            out += static_cast<std::size_t>(checked_power(d, k));
        }
        return out;
    }

    PathPoints::PathPoints(int d, std::vector<double> coordinates) : d_(d), coordinates_(std::move(coordinates)) {
        validate();
    }

    PathPoints::PathPoints(int d, std::span<const double> coordinates)
        : d_(d), coordinates_(coordinates.begin(), coordinates.end()) {
        validate();
    }

    PathPoints::PathPoints(int d, std::span<const float> coordinates)
        : d_(d), coordinates_(coordinates.begin(), coordinates.end()) {
        validate();
    }

    void PathPoints::validate() const {
        if (d_ < 1) {
            throw std::invalid_argument("path dimension must be at least 1");
        }
        if (coordinates_.empty()) {
            throw std::invalid_argument("path has no points");
        }
        if (coordinates_.size() % static_cast<std::size_t>(d_) != 0) {
            throw std::invalid_argument("coordinate count is not a multiple of the dimension");
        }
        for (double c : coordinates_) {
            if (!std::isfinite(c)) {
                throw std::invalid_argument("path coordinates must be finite");
            }
        }
    }

    std::vector<double> PathPoints::displacement(std::size_t i) const {
        auto a = point(i);
        auto b = point(i + 1);
        std::vector<double> out(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            out[k] = b[k] - a[k];
        }
        return out;
    }

    TensorSeries path_signature(const PathPoints& path, int m) {
        if (m < 1) {
            throw std::invalid_argument("level must be at least 1");
        }
        const int d = path.dimension();
        TensorSeries acc = TensorSeries::identity(d, m);
        if (path.size() < 2) {
            return acc;
        }
        TensorSeries seg(d, m);
        std::vector<double> x(static_cast<std::size_t>(d));
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            auto a = path.point(i);
            auto b = path.point(i + 1);
            for (int k = 0; k < d; ++k) {
                x[static_cast<std::size_t>(k)] = b[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k)];
            }
            if (i == 0) {
                fill_segment_signature(x, acc);
            } else {
                fill_segment_signature(x, seg);
                chen_concat_inplace(acc, seg);
            }
        }
        return acc;
    }

}  // namespace sigkit
