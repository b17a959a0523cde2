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
 // Benchmark workloads: seeded random paths and timed sig / logsig runs.

#ifndef SIGKIT_BENCH_HPP
#define SIGKIT_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sigkit/lie_basis.hpp"
#include "sigkit/tensor_algebra.hpp"

namespace sigkit {

    /* SplitMix64: the state advances by a fixed odd constant and each output is a bijective mix of the
     * state, so output i depends only on the seed and i. Normals use Box-Muller on two consecutive
     * uniforms, the second of the pair being discarded, which keeps the stream position fixed.
     */
    class SplitMix64 {
    public:
        explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

        std::uint64_t next();
        // Uniform on (0, 1): 53 random bits, offset by half an ulp.
        double uniform();
        double normal();

    private:
        std::uint64_t state_;
    };

    // num_paths paths of steps+1 points starting at the origin, with standard normal increments drawn
    // path by path, step by step, coordinate by coordinate from one SplitMix64 stream.
    std::vector<PathPoints> generate_paths(int d, int steps, int num_paths, std::uint64_t seed);

    // "sig" is the signature; "x", "s" and "o" the log signature methods.
    struct BenchConfig {
        int d = 2;
        int m = 2;
        int num_paths = 100;
        int steps = 100;
        std::vector<std::string> methods{"sig"};
        BasisKind basis = BasisKind::Lyndon;
        std::uint64_t seed = 0;
    };

    struct BenchRow {
        std::string method;
        std::string basis;  // "-" for sig
        int d = 0;
        int m = 0;
        int num_paths = 0;
        int steps = 0;
        double seconds_total = 0;    // computing all paths, prepare excluded
        double prepare_seconds = 0;  // zero for sig
    };

    struct BenchFailure {
        std::string method;
        std::string message;
    };

    struct BenchReport {
        std::vector<BenchRow> rows;
        std::vector<BenchFailure> failures;
    };

    // Splits "sig,s,o" or "so" into method names. Throws std::invalid_argument on unknown names.
    std::vector<std::string> parse_bench_methods(const std::string& list);

    // Runs each method in turn. A method that fails (capacity or otherwise) is reported in failures and
    // the remaining methods still run.
    BenchReport run_bench(const BenchConfig& config);

    inline constexpr const char* kBenchCsvHeader = "method,basis,d,m,num_paths,steps,seconds_total,prepare_seconds";
    void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace sigkit

#endif  // SIGKIT_BENCH_HPP
