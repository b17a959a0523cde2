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
 // Dense truncated tensor algebra: products, segment signatures, Chen's identity, log and exp.

#ifndef SIGKIT_TENSOR_ALGEBRA_HPP
#define SIGKIT_TENSOR_ALGEBRA_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigkit/words.hpp"

namespace sigkit {

    /* An element of the tensor algebra truncated after level m. Level k is a contiguous block of d^k
     * scalars, one per word of length k in lexicographic order; the blocks are stored back to back
     * starting with the single level-0 scalar.
     */
    template <typename T>
    class BasicTensorSeries {
    public:
        BasicTensorSeries(int d, int m);

        static BasicTensorSeries identity(int d, int m) {
            BasicTensorSeries out(d, m);
            out.data_[0] = T(1);
            return out;
        }

        int dimension() const { return d_; }
        int max_level() const { return m_; }

        std::size_t level_size(int k) const { return offsets_[k + 1] - offsets_[k]; }
        std::span<T> level(int k) { return std::span<T>(data_).subspan(offsets_[k], level_size(k)); }
        std::span<const T> level(int k) const {
            return std::span<const T>(data_).subspan(offsets_[k], level_size(k));
        }

        // All levels 0..m.
        std::span<T> data() { return data_; }
        std::span<const T> data() const { return data_; }

        // Levels 1..m, the external layout.
        std::span<const T> without_level_zero() const { return std::span<const T>(data_).subspan(1); }

        bool same_shape(const BasicTensorSeries& other) const { return d_ == other.d_ && m_ == other.m_; }

    private:
        int d_;
        int m_;
        std::vector<std::size_t> offsets_;
        std::vector<T> data_;
    };

    using TensorSeries = BasicTensorSeries<double>;

    // Length of levels 1..m together: d + d^2 + ... + d^m.
    std::size_t signature_length(int d, int m);

    /* out = a * b in the concatenation product, keeping levels up to max_level; higher levels of out are
     * zeroed. out must not alias a or b.
     */
    template <typename T>
    void multiply_into(const BasicTensorSeries<T>& a, const BasicTensorSeries<T>& b, BasicTensorSeries<T>& out,
                       int max_level);

    template <typename T>
    BasicTensorSeries<T> concat_product(const BasicTensorSeries<T>& a, const BasicTensorSeries<T>& b);

    // The signature of a straight line with displacement x: level k is x^{(x)k} / k!.
    template <typename T>
    BasicTensorSeries<T> segment_signature(std::span<const T> x, int m);

    /* acc <- acc * seg, updating levels from the highest down so that the lower levels read on the way
     * are still the old ones. seg must have level 0 equal to 1.
     */
    template <typename T>
    void chen_concat_inplace(BasicTensorSeries<T>& acc, const BasicTensorSeries<T>& seg);

    template <typename T>
    BasicTensorSeries<T> chen_concat(const BasicTensorSeries<T>& acc, const BasicTensorSeries<T>& seg) {
        BasicTensorSeries<T> out = acc;
        chen_concat_inplace(out, seg);
        return out;
    }

    /* log(1+T) = T - T^2/2 + T^3/3 - ..., with T = s - 1, evaluated as T(1 - T(1/2 - T(1/3 - ... T/m))).
     * Requires level 0 of s to be 1; level 0 of the result is 0.
     */
    template <typename T>
    BasicTensorSeries<T> tensor_log(const BasicTensorSeries<T>& s);

    // Sum of s^n/n! for n = 0..m, evaluated as 1 + s(1 + s/2(1 + s/3(...))). Requires level 0 of s to be 0.
    template <typename T>
    BasicTensorSeries<T> tensor_exp(const BasicTensorSeries<T>& s);

    /* A piecewise-linear path: n points in R^d, stored row-major. Construction rejects an empty point list
     * and non-finite coordinates.
     */
    class PathPoints {
    public:
        PathPoints(int d, std::vector<double> coordinates);
        PathPoints(int d, std::span<const double> coordinates);
        // Single precision input is widened.
        PathPoints(int d, std::span<const float> coordinates);

        int dimension() const { return d_; }
        std::size_t size() const { return coordinates_.size() / static_cast<std::size_t>(d_); }
        std::span<const double> point(std::size_t i) const {
            return std::span<const double>(coordinates_).subspan(i * static_cast<std::size_t>(d_),
                                                                 static_cast<std::size_t>(d_));
        }
        std::span<const double> coordinates() const { return coordinates_; }

        // point(i+1) - point(i)
        std::vector<double> displacement(std::size_t i) const;

    private:
        void validate() const;

        int d_;
        std::vector<double> coordinates_;
    };

    TensorSeries path_signature(const PathPoints& path, int m);

    // ==================== implementation ====================

    template <typename T>
    BasicTensorSeries<T>::BasicTensorSeries(int d, int m) : d_(d), m_(m) {
        if (d < 1 || m < 0) {
            throw std::invalid_argument("tensor series needs d >= 1 and m >= 0");
        }
        offsets_.reserve(static_cast<std::size_t>(m) + 2);
        std::size_t offset = 0;
        offsets_.push_back(0);
        for (int k = 0; k <= m; ++k) {
            offset += static_cast<std::size_t>(checked_power(d, k));
            offsets_.push_back(offset);
        }
        data_.assign(offset, T(0));
    }

    template <typename T>
    void multiply_into(const BasicTensorSeries<T>& a, const BasicTensorSeries<T>& b, BasicTensorSeries<T>& out,
                       int max_level) {
        if (!a.same_shape(b) || !a.same_shape(out)) {
            throw std::invalid_argument("tensor series shapes differ");
        }
        for (int k = 0; k <= out.max_level(); ++k) {
            auto target = out.level(k);
            std::fill(target.begin(), target.end(), T(0));
            if (k > max_level) {
                continue;
            }
            for (int j = 0; j <= k; ++j) {
                auto left = a.level(j);
                auto right = b.level(k - j);
                const std::size_t stride = right.size();
                for (std::size_t u = 0; u < left.size(); ++u) {
                    const T& x = left[u];
                    if (x == T(0)) {
                        continue;
                    }
                    T* row = target.data() + u * stride;
                    for (std::size_t v = 0; v < stride; ++v) {
                        row[v] += x * right[v];
                    }
                }
            }
        }
    }

    template <typename T>
    BasicTensorSeries<T> concat_product(const BasicTensorSeries<T>& a, const BasicTensorSeries<T>& b) {
        BasicTensorSeries<T> out(a.dimension(), a.max_level());
        multiply_into(a, b, out, a.max_level());
        return out;
    }

    template <typename T>
    BasicTensorSeries<T> segment_signature(std::span<const T> x, int m) {
        if (x.empty()) {
            throw std::invalid_argument("displacement must have at least one coordinate");
        }
        const int d = static_cast<int>(x.size());
        BasicTensorSeries<T> out(d, m);
        out.level(0)[0] = T(1);
        for (int k = 1; k <= m; ++k) {
            auto prev = out.level(k - 1);
            auto cur = out.level(k);
            const std::size_t stride = x.size();
            for (std::size_t u = 0; u < prev.size(); ++u) {
                const T p = prev[u] / T(k);
                for (std::size_t v = 0; v < stride; ++v) {
                    cur[u * stride + v] = p * x[v];
                }
            }
        }
        return out;
    }

    template <typename T>
    void chen_concat_inplace(BasicTensorSeries<T>& acc, const BasicTensorSeries<T>& seg) {
        if (!acc.same_shape(seg)) {
            throw std::invalid_argument("tensor series shapes differ");
        }
        for (int k = acc.max_level(); k >= 1; --k) {
            auto target = acc.level(k);
            // seg level 0 is 1, so acc_k itself is kept; add the cross terms and seg_k.
            const T seg0 = seg.level(0)[0];
            if (seg0 != T(1)) {
                for (auto& v : target) {
                    v *= seg0;
                }
            }
            for (int j = 0; j < k; ++j) {
                auto left = acc.level(j);
                auto right = seg.level(k - j);
                const std::size_t stride = right.size();
                for (std::size_t u = 0; u < left.size(); ++u) {
                    const T x = left[u];
                    if (x == T(0)) {
                        continue;
                    }
                    T* row = target.data() + u * stride;
                    for (std::size_t v = 0; v < stride; ++v) {
                        row[v] += x * right[v];
                    }
                }
            }
        }
        acc.level(0)[0] *= seg.level(0)[0];
    }

    template <typename T>
    BasicTensorSeries<T> tensor_log(const BasicTensorSeries<T>& s) {
        if (s.level(0)[0] != T(1)) {
            throw std::invalid_argument("tensor_log needs level 0 equal to 1");
        }
        const int d = s.dimension();
        const int m = s.max_level();
        BasicTensorSeries<T> t = s;
        t.level(0)[0] = T(0);
        BasicTensorSeries<T> out(d, m);
        if (m == 0) {
            return out;
        }
        // q_n = 1/n - t q_{n+1}, starting from q_m = 1/m; log = t q_1. q_n is only needed up to level m-n.
        BasicTensorSeries<T> q(d, m);
        BasicTensorSeries<T> product(d, m);
        q.level(0)[0] = T(1) / T(m);
        for (int n = m - 1; n >= 1; --n) {
            multiply_into(t, q, product, m - n);
            for (std::size_t i = 0; i < product.data().size(); ++i) {
                q.data()[i] = -product.data()[i];
            }
            q.level(0)[0] += T(1) / T(n);
        }
        multiply_into(t, q, out, m);
        return out;
    }

    template <typename T>
    BasicTensorSeries<T> tensor_exp(const BasicTensorSeries<T>& s) {
        if (s.level(0)[0] != T(0)) {
            throw std::invalid_argument("tensor_exp needs level 0 equal to 0");
        }
        const int d = s.dimension();
        const int m = s.max_level();
        // q_n = 1 + s q_{n+1} / n with q_{m+1} = 1; exp = q_1. q_n is only needed up to level m-n+1.
        BasicTensorSeries<T> q = BasicTensorSeries<T>::identity(d, m);
        BasicTensorSeries<T> product(d, m);
        for (int n = m; n >= 1; --n) {
            multiply_into(s, q, product, m - n + 1);
            const T inv = T(1) / T(n);
            for (std::size_t i = 0; i < product.data().size(); ++i) {
                q.data()[i] = product.data()[i] * inv;
            }
            q.level(0)[0] += T(1);
        }
        return q;
    }

}  // namespace sigkit

#endif  // SIGKIT_TENSOR_ALGEBRA_HPP
