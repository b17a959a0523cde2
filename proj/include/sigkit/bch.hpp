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
 // Exact Baker-Campbell-Hausdorff coefficients in the two-letter Lyndon basis, and their text cache.

#ifndef SIGKIT_BCH_HPP
#define SIGKIT_BCH_HPP

#include <gmpxx.h>

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sigkit/lie_basis.hpp"

namespace sigkit {

    // Highest level derive_bch accepts. Level L needs 2^L exact rationals per tensor level.
    inline constexpr int kMaxBchLevel = 16;

    /* log(exp(a) exp(b)) truncated at max_level, as coefficients over the Lyndon basis on the letters
     * a = 1 and b = 2. coefficients[i] belongs to basis[i].
     */
    struct BchSeries {
        int max_level = 0;
        std::shared_ptr<const HallBasis> basis;
        std::vector<mpq_class> coefficients;

        // Looks an element up by its foliage written in a and b, e.g. "aab". Zero if absent.
        mpq_class coefficient(const std::string& foliage) const;
    };

    /* Computes the series by exact rational arithmetic in the tensor algebra on two letters: the logarithm
     * of exp(a) exp(b), projected blockwise onto the Lyndon basis. Throws std::invalid_argument for
     * level < 1 and CapacityError above kMaxBchLevel.
     */
    BchSeries derive_bch(int level);

    // The series truncated to a lower level.
    BchSeries truncate_bch(const BchSeries& series, int level);

    /* Cache format, UTF-8 text:
     *   BCH-LYNDON v1 maxlevel=<L>
     *   <level> <foliage over a,b> <numerator>/<denominator>     one line per basis element, basis order
     */
    void write_bch_cache(std::ostream& out, const BchSeries& series);
    std::string format_bch_cache(const BchSeries& series);

    /* Parses and validates a cache: header, element order, canonical fractions, unit coefficients on a and
     * b and the known low-level values. Throws ParseError on any mismatch.
     */
    BchSeries read_bch_cache(std::istream& in);

    // SIGKIT_BCH_CACHE if set, otherwise $XDG_CACHE_HOME/sigkit or ~/.cache/sigkit. Empty if none resolves.
    std::optional<std::filesystem::path> default_bch_cache_path();

    /* Loads the series from the cache at path when it is valid and deep enough, otherwise derives it and
     * (best effort) rewrites the cache. With no path the series is derived in memory.
     */
    BchSeries load_or_derive_bch(int level, const std::optional<std::filesystem::path>& path);

}  // namespace sigkit

#endif  // SIGKIT_BCH_HPP
