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
#include "sigkit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sigkit/io.hpp"
#include "sigkit/logsig.hpp"

namespace sigkit {
    namespace {
        using Clock = std::chrono::steady_clock;

        double seconds_since(Clock::time_point start) {
            return std::chrono::duration<double>(Clock::now() - start).count();
        }

        volatile double g_sink = 0;

        void consume(std::span<const double> v) {
            if (!v.empty()) {
                g_sink = g_sink + v[v.size() / 2];
            }
        }
    }  // namespace

    std::uint64_t SplitMix64::next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double SplitMix64::uniform() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double SplitMix64::normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::vector<PathPoints> generate_paths(int d, int steps, int num_paths, std::uint64_t seed) {
        if (d < 1 || steps < 1 || num_paths < 1) {
            throw std::invalid_argument("bench paths need positive d, steps and count");
        }
        SplitMix64 rng(seed);
        std::vector<PathPoints> out;
        out.reserve(static_cast<std::size_t>(num_paths));
        const auto width = static_cast<std::size_t>(d);
        for (int p = 0; p < num_paths; ++p) {
            std::vector<double> coords(width * (static_cast<std::size_t>(steps) + 1), 0.0);
            for (std::size_t i = 1; i <= static_cast<std::size_t>(steps); ++i) {
                for (std::size_t j = 0; j < width; ++j) {
                    coords[i * width + j] = coords[(i - 1) * width + j] + rng.normal();
                }
            }
            out.emplace_back(d, std::move(coords));
        }
        return out;
    }

    std::vector<std::string> parse_bench_methods(const std::string& list) {
        std::vector<std::string> out;
        std::size_t start = 0;
        while (start <= list.size()) {
            const std::size_t comma = std::min(list.find(',', start), list.size());
            const std::string token = list.substr(start, comma - start);
            if (token == "sig") {
                out.push_back(token);
            } else if (!token.empty()) {
                for (char c : token) {
                    const char lower = static_cast<char>(c | 0x20);
                    if (lower != 'x' && lower != 's' && lower != 'o') {
                        throw std::invalid_argument("unknown bench method: " + token);
                    }
                    out.emplace_back(1, lower);
                }
            }
            start = comma + 1;
        }
        if (out.empty()) {
            throw std::invalid_argument("no bench methods given");
        }
        return out;
    }

    BenchReport run_bench(const BenchConfig& config) {
        const std::vector<PathPoints> paths = generate_paths(config.d, config.steps, config.num_paths, config.seed);
        BenchReport report;
        for (const std::string& method : config.methods) {
            BenchRow row;
            row.method = method;
            row.basis = method == "sig" ? "-" : to_string(config.basis);
            row.d = config.d;
            row.m = config.m;
            row.num_paths = config.num_paths;
            row.steps = config.steps;
            try {
                if (method == "sig") {
                    const auto start = Clock::now();
                    for (const PathPoints& path : paths) {
                        consume(path_signature(path, config.m).without_level_zero());
                    }
                    row.seconds_total = seconds_since(start);
                } else {
                    const MethodSet methods = MethodSet::parse(method);
                    auto start = Clock::now();
                    const PreparedContext ctx = prepare(config.d, config.m, config.basis, methods);
                    row.prepare_seconds = seconds_since(start);
                    start = Clock::now();
                    for (const PathPoints& path : paths) {
                        if (methods.direct) {
                            consume(logsig_o(path, ctx).coefficients);
                        } else if (methods.projection) {
                            consume(logsig_s(path, ctx).coefficients);
                        } else {
                            consume(logsig_x(path, ctx).without_level_zero());
                        }
                    }
                    row.seconds_total = seconds_since(start);
                }
                report.rows.push_back(row);
            } catch (const std::exception& e) {
                report.failures.push_back({method, e.what()});
            }
        }
        return report;
    }

    void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
        out << kBenchCsvHeader << '\n';
        for (const BenchRow& r : rows) {
            out << r.method << ',' << r.basis << ',' << r.d << ',' << r.m << ',' << r.num_paths << ',' << r.steps
                << ',' << format_number(r.seconds_total) << ',' << format_number(r.prepare_seconds) << '\n';
        }
    }

}  // namespace sigkit
