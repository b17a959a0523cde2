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
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sigkit/bench.hpp"
#include "sigkit/errors.hpp"
#include "sigkit/io.hpp"
#include "support/oracles.hpp"

using namespace sigkit;

namespace {
    PathPoints parse(const std::string& text, bool header = false) {
        std::istringstream in(text);
        return read_path_csv(in, header);
    }
}  // namespace

TEST_CASE("path files") {
    const PathPoints p = parse("0,0\n1, -1\n\n2,0\r\n");
    CHECK(p.dimension() == 2);
    CHECK(p.size() == 3);
    CHECK(std::vector<double>(p.coordinates().begin(), p.coordinates().end()) == std::vector<double>{0, 0, 1, -1, 2, 0});
    CHECK(parse("x,y\n1e-3,+2.5\n", true).point(0)[0] == 1e-3);
    CHECK(parse("7\n").dimension() == 1);
    CHECK_THROWS_AS(parse(""), ParseError);
    CHECK_THROWS_AS(parse("\n\n"), ParseError);
    CHECK_THROWS_AS(parse("x,y\n", true), ParseError);
    CHECK_THROWS_AS(parse("1,2\n3\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2\n3,4,5\n"), ParseError);
    CHECK_THROWS_AS(parse("1,abc\n"), ParseError);
    CHECK_THROWS_AS(parse("1,2x\n"), ParseError);
    CHECK_THROWS_AS(parse("1,\n"), ParseError);
    CHECK_THROWS_AS(parse("1,nan\n"), ParseError);
    CHECK_THROWS_AS(parse("1,inf\n"), ParseError);
    CHECK_THROWS_AS(parse("1,1e999\n"), ParseError);
    CHECK_THROWS_AS(parse("x,y\n1,2\n"), ParseError);
}

TEST_CASE("number rendering round-trips and stays within 17 digits") {
    oracle::Gen gen(41);
    std::vector<double> values{0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, -2.5e300,
                               std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max()};
    for (int i = 0; i < 1000; ++i) {
        values.push_back(gen.uniform(-1, 1) * std::pow(10.0, gen.integer(-30, 30)));
    }
    for (double v : values) {
        const std::string s = format_number(v);
        double back = 0;
        const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
        CHECK(ec == std::errc());
        CHECK(end == s.data() + s.size());
        CHECK(std::signbit(back) == std::signbit(v));
        CHECK(back == v);
        // significant digits: those of the mantissa from the first nonzero one, trailing zeros of an
        // integer rendering aside
        std::string mantissa;
        for (char c : s.substr(0, s.find('e'))) {
            if (c >= '0' && c <= '9' && !(mantissa.empty() && c == '0')) {
                mantissa += c;
            }
        }
        if (s.find('.') == std::string::npos) {
            while (!mantissa.empty() && mantissa.back() == '0') {
                mantissa.pop_back();
            }
        }
        CHECK(mantissa.size() <= 17);
    }
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(2.0) == "2");
    CHECK(format_number(1234567890123456774144.0) == "1.2345678901234568e+21");
    CHECK(format_number(1e16) == "1e+16");
    CHECK(format_csv_row(std::vector<double>{2, 0, 1}) == "2,0,1");
    CHECK(format_csv_row(std::vector<double>{}).empty());
    const std::string json = format_json_array(std::vector<double>{2, -0.25, 1e-20});
    const auto parsed = nlohmann::json::parse(json);
    CHECK(parsed.size() == 3);
    CHECK(parsed[1].get<double>() == -0.25);
    CHECK(parsed[2].get<double>() == 1e-20);
}

TEST_CASE("SplitMix64 reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next() == 0x06c45d188009454fULL);
    SplitMix64 u(42);
    double sum = 0;
    double sum_sq = 0;
    const int n = 200000;
    SplitMix64 g(7);
    for (int i = 0; i < n; ++i) {
        const double x = u.uniform();
        CHECK_UNARY(x > 0.0);
        CHECK_UNARY(x < 1.0);
        const double z = g.normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum_sq / n - 1.0) < 0.02);
}

TEST_CASE("generated workloads are reproducible") {
    const auto a = generate_paths(3, 10, 5, 99);
    const auto b = generate_paths(3, 10, 5, 99);
    const auto c = generate_paths(3, 10, 5, 100);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].size() == 11);
        CHECK(a[i].point(0)[0] == 0.0);
        CHECK(std::vector<double>(a[i].coordinates().begin(), a[i].coordinates().end()) ==
              std::vector<double>(b[i].coordinates().begin(), b[i].coordinates().end()));
    }
    CHECK(a[0].point(1)[0] != c[0].point(1)[0]);
    // the first increment is the first normal of the stream
    SplitMix64 rng(99);
    CHECK(a[0].point(1)[0] == rng.normal());
    CHECK_THROWS_AS(generate_paths(0, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("bench methods and rows") {
    CHECK(parse_bench_methods("sig,s,o") == std::vector<std::string>{"sig", "s", "o"});
    CHECK(parse_bench_methods("SO") == std::vector<std::string>{"s", "o"});
    CHECK(parse_bench_methods("sig,xso") == std::vector<std::string>{"sig", "x", "s", "o"});
    CHECK_THROWS_AS(parse_bench_methods("q"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bench_methods(""), std::invalid_argument);

    BenchConfig config;
    config.d = 2;
    config.m = 4;
    config.num_paths = 10;
    config.steps = 20;
    config.methods = {"sig", "x", "s", "o"};
    const BenchReport report = run_bench(config);
    CHECK(report.failures.empty());
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].basis == "-");
    CHECK(report.rows[2].basis == "lyndon");
    for (const BenchRow& row : report.rows) {
        CHECK(row.seconds_total >= 0);
        CHECK(row.prepare_seconds >= 0);
        CHECK(row.num_paths == 10);
    }
    std::ostringstream out;
    write_bench_csv(out, report.rows);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == kBenchCsvHeader);
    int count = 0;
    while (std::getline(lines, line)) {
        ++count;
        CHECK(std::count(line.begin(), line.end(), ',') == 7);
    }
    CHECK(count == 4);

    config.d = 1000;
    config.m = 40;
    config.methods = {"s", "sig"};
    config.num_paths = 1;
    config.steps = 1;
    const BenchReport failing = run_bench(config);
    CHECK(failing.failures.size() == 2);
    CHECK(failing.rows.empty());
}
