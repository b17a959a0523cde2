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

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "sigkit/bch.hpp"
#include "sigkit/errors.hpp"
#include "support/oracles.hpp"

using namespace sigkit;

namespace {
    using Exact = std::map<Word, mpq_class>;

    Exact product(const Exact& x, const Exact& y, int m) {
        Exact out;
        for (const auto& [u, a] : x) {
            for (const auto& [v, b] : y) {
                if (static_cast<int>(u.size() + v.size()) <= m) {
                    Word w = u;
                    w.insert(w.end(), v.begin(), v.end());
                    out[w] += a * b;
                }
            }
        }
        return out;
    }

    Exact exp_letter(Letter l, int m) {
        Exact out{{Word{}, 1}};
        mpq_class f = 1;
        for (int k = 1; k <= m; ++k) {
            f /= k;
            out[Word(static_cast<std::size_t>(k), l)] = f;
        }
        return out;
    }

    // log(exp(a) exp(b)) by the alternating power series, in words.
    Exact reference_log(int m) {
        Exact t = product(exp_letter(1, m), exp_letter(2, m), m);
        t.erase(Word{});
        Exact out;
        Exact power{{Word{}, 1}};
        for (int n = 1; n <= m; ++n) {
            power = product(power, t, m);
            for (const auto& [w, c] : power) {
                out[w] += (n % 2 == 1 ? c : -c) / n;
            }
        }
        std::erase_if(out, [](const auto& e) { return sgn(e.second) == 0; });
        return out;
    }

    oracle::Poly tree(const HallBasis& basis, std::size_t i) {
        const BasisElt& e = basis[i];
        return e.is_letter() ? oracle::letter(e.letter) : oracle::bracket(tree(basis, e.left), tree(basis, e.right));
    }

    std::string slurp(const std::filesystem::path& p) {
        std::ifstream in(p);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::filesystem::path scratch_dir() {
        auto dir = std::filesystem::temp_directory_path() / ("sigkit_bch_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(dir);
        return dir;
    }

    BchSeries read_text(const std::string& text) {
        std::istringstream in(text);
        return read_bch_cache(in);
    }
}  // namespace

TEST_CASE("low-order coefficients") {
    const BchSeries s = derive_bch(6);
    CHECK(s.coefficient("a") == 1);
    CHECK(s.coefficient("b") == 1);
    CHECK(s.coefficient("ab") == mpq_class(1, 2));
    CHECK(s.coefficient("aab") == mpq_class(1, 12));
    CHECK(s.coefficient("abb") == mpq_class(1, 12));
    CHECK(s.coefficient("aaab") == 0);
    CHECK(s.coefficient("aabb") == mpq_class(1, 24));
    CHECK(s.coefficient("abbb") == 0);
    CHECK(s.coefficient("aaaab") == mpq_class(-1, 720));
    CHECK(s.coefficient("abbbb") == mpq_class(-1, 720));
}

TEST_CASE("the derived series expands to log(exp(a) exp(b))") {
    for (int level : {1, 3, 6, 8}) {
        const BchSeries s = derive_bch(level);
        Exact expanded;
        for (std::size_t i = 0; i < s.basis->size(); ++i) {
            for (const auto& [w, c] : tree(*s.basis, i)) {
                expanded[w] += s.coefficients[i] * c;
            }
        }
        std::erase_if(expanded, [](const auto& e) { return sgn(e.second) == 0; });
        CHECK(expanded == reference_log(level));
    }
}

TEST_CASE("truncation is the derivation at the lower level") {
    const BchSeries deep = derive_bch(9);
    for (int level = 1; level <= 9; ++level) {
        const BchSeries t = truncate_bch(deep, level);
        const BchSeries d = derive_bch(level);
        CHECK(t.max_level == level);
        CHECK(t.coefficients == d.coefficients);
    }
    CHECK_THROWS_AS(truncate_bch(deep, 10), std::invalid_argument);
    CHECK_THROWS_AS(derive_bch(0), std::invalid_argument);
    CHECK_THROWS_AS(derive_bch(kMaxBchLevel + 1), CapacityError);
}

TEST_CASE("cache text round-trips byte for byte") {
    const BchSeries s = derive_bch(8);
    const std::string text = format_bch_cache(s);
    CHECK(text.rfind("BCH-LYNDON v1 maxlevel=8\n1 a 1/1\n1 b 1/1\n2 ab 1/2\n3 aab 1/12\n3 abb 1/12\n", 0) == 0);
    const BchSeries back = read_text(text);
    CHECK(back.max_level == 8);
    CHECK(back.coefficients == s.coefficients);
    CHECK(format_bch_cache(back) == text);
}

TEST_CASE("corrupt caches are rejected") {
    const std::string good = format_bch_cache(derive_bch(5));
    auto replaced = [&](const std::string& from, const std::string& to) {
        std::string t = good;
        const auto pos = t.find(from);
        REQUIRE(pos != std::string::npos);
        t.replace(pos, from.size(), to);
        return t;
    };
    CHECK_THROWS_AS(read_text(""), ParseError);
    CHECK_THROWS_AS(read_text(replaced("BCH-LYNDON v1", "BCH-LYNDON v2")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("maxlevel=5", "maxlevel=x")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("maxlevel=5", "maxlevel=99")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("2 ab 1/2", "2 ab 2/4")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("2 ab 1/2", "2 ab 1/3")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("2 ab 1/2", "2 ab -1/-2")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("2 ab 1/2", "2 ab 0.5")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("3 aab 1/12\n3 abb 1/12", "3 abb 1/12\n3 aab 1/12")), ParseError);
    CHECK_THROWS_AS(read_text(replaced("3 aab 1/12", "3 aab 1/12 extra")), ParseError);
    CHECK_THROWS_AS(read_text(good.substr(0, good.size() / 2)), ParseError);
    CHECK_THROWS_AS(read_text(good + "1 a 1/1\n"), ParseError);
    CHECK_NOTHROW(read_text(good + "\n"));
}

TEST_CASE("load_or_derive_bch writes, reuses and repairs the cache") {
    const auto dir = scratch_dir();
    const auto path = dir / "nested" / "bch.txt";
    std::filesystem::remove_all(dir / "nested");

    const BchSeries first = load_or_derive_bch(6, path);
    REQUIRE(std::filesystem::exists(path));
    CHECK(slurp(path) == format_bch_cache(derive_bch(6)));

    const BchSeries shallower = load_or_derive_bch(4, path);
    CHECK(shallower.coefficients == derive_bch(4).coefficients);
    CHECK(slurp(path) == format_bch_cache(first));  // a deep enough cache is left alone

    const BchSeries deeper = load_or_derive_bch(7, path);
    CHECK(deeper.max_level == 7);
    CHECK(slurp(path) == format_bch_cache(derive_bch(7)));

    {
        std::ofstream out(path);
        out << "garbage\n";
    }
    CHECK(load_or_derive_bch(3, path).coefficients == derive_bch(3).coefficients);
    CHECK(slurp(path) == format_bch_cache(derive_bch(3)));

    CHECK(load_or_derive_bch(5, std::nullopt).coefficients == derive_bch(5).coefficients);
    std::filesystem::remove_all(dir);
}
