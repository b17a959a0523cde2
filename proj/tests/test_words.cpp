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

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sigkit/words.hpp"
#include "support/oracles.hpp"

using namespace sigkit;

TEST_CASE("is_lyndon agrees with the rotation definition") {
    for (int d = 1; d <= 3; ++d) {
        for (int n = 1; n <= 7; ++n) {
            for (const Word& w : oracle::all_words(d, n)) {
                CHECK_MESSAGE(is_lyndon(w) == oracle::lyndon_by_rotation(w), to_string(w));
            }
        }
    }
    CHECK_THROWS_AS(is_lyndon(Word{}), std::invalid_argument);
}

TEST_CASE("lyndon_words lists exactly the Lyndon words, in order") {
    for (int d = 1; d <= 4; ++d) {
        const int m = d == 4 ? 5 : 8;
        const auto levels = lyndon_words(d, m);
        REQUIRE(levels.size() == static_cast<std::size_t>(m));
        for (int n = 1; n <= m; ++n) {
            std::vector<Word> expected;
            for (const Word& w : oracle::all_words(d, n)) {
                if (oracle::lyndon_by_rotation(w)) {
                    expected.push_back(w);
                }
            }
            CHECK(levels[static_cast<std::size_t>(n) - 1] == expected);
            CHECK(witt_level_count(d, n) == static_cast<unsigned long>(expected.size()));
        }
    }
}

TEST_CASE("witt_class_count counts the Lyndon words of each anagram class") {
    for (int d = 1; d <= 3; ++d) {
        for (int n = 1; n <= 8; ++n) {
            std::map<LetterFreq, long> lyndon;
            std::map<LetterFreq, long> all;
            for (const Word& w : oracle::all_words(d, n)) {
                ++all[anagram_key(w)];
                if (oracle::lyndon_by_rotation(w)) {
                    ++lyndon[anagram_key(w)];
                }
            }
            const auto keys = anagram_keys(d, n);
            CHECK(keys.size() == all.size());
            for (const LetterFreq& key : keys) {
                CHECK(key.total() == n);
                CHECK(multinomial_count(key) == all.at(key));
                CHECK(witt_class_count(key) == lyndon[key]);
            }
            CHECK(std::is_sorted(keys.begin(), keys.end(), [](const LetterFreq& a, const LetterFreq& b) {
                return a.first_word() < b.first_word();
            }));
        }
    }
}

TEST_CASE("class counts in three letters at level 10") {
    struct Row {
        std::vector<int> counts;
        int classes;
        long words;
        long lyndon;
    };
    const std::vector<Row> rows = {
        {{4, 3, 3}, 3, 4200, 420}, {{4, 4, 2}, 3, 3150, 312}, {{5, 3, 2}, 6, 2520, 252},
        {{5, 4, 1}, 6, 1260, 126}, {{6, 2, 2}, 3, 1260, 124},
    };
    const auto keys = anagram_keys(3, 10);
    CHECK(keys.size() == 66);
    // every class but the three single-letter ones holds basis elements
    std::vector<long> sizes;
    for (const LetterFreq& key : keys) {
        if (witt_class_count(key) > 0) {
            sizes.push_back(witt_class_count(key).get_si());
        }
    }
    CHECK(sizes.size() == 63);
    std::sort(sizes.rbegin(), sizes.rend());
    CHECK(std::accumulate(sizes.begin(), sizes.begin() + 12, 0L) == 3708);
    for (const Row& row : rows) {
        int classes = 0;
        for (const LetterFreq& key : keys) {
            std::vector<int> counts;
            for (Letter l = 1; l <= 3; ++l) {
                counts.push_back(key.counts.contains(l) ? key.counts.at(l) : 0);
            }
            std::vector<int> sorted = counts;
            std::sort(sorted.rbegin(), sorted.rend());
            if (sorted != row.counts) {
                continue;
            }
            ++classes;
            CHECK(multinomial_count(key) == row.words);
            CHECK(witt_class_count(key) == row.lyndon);
        }
        CHECK(classes == row.classes);
    }
    CHECK(witt_level_count(3, 10) == 5880);
    mpz_class total = 0;
    for (int n = 1; n <= 10; ++n) {
        total += witt_level_count(3, n);
    }
    CHECK(total == 9382);
}

TEST_CASE("witt counts stay exact beyond 64 bits") {
    // Level 40 over 10 letters: (10^40 - 10^20 - 10^8 + 10^4 + ...) / 40, far past uint64.
    const mpz_class count = witt_level_count(10, 40);
    mpz_class sum = 0;
    for (int delta = 1; delta <= 40; ++delta) {
        if (40 % delta == 0) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(40 / delta));
            sum += moebius(delta) * p;
        }
    }
    CHECK(sum % 40 == 0);
    CHECK(count == sum / 40);
    CHECK(count > mpz_class("18446744073709551616"));
}

TEST_CASE("moebius") {
    const std::vector<int> expected = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
    for (int n = 1; n <= 12; ++n) {
        CHECK(moebius(n) == expected[static_cast<std::size_t>(n) - 1]);
    }
}

TEST_CASE("word_index and word_at are inverse and lexicographic") {
    for (int d = 1; d <= 4; ++d) {
        for (int n = 1; n <= 4; ++n) {
            const auto words = oracle::all_words(d, n);
            for (std::size_t i = 0; i < words.size(); ++i) {
                CHECK(word_index(words[i], d) == i);
                CHECK(word_at(i, d, n) == words[i]);
            }
        }
    }
    CHECK_THROWS_AS(checked_power(10, 30), std::overflow_error);
    CHECK(checked_power(3, 10) == 59049);
}

TEST_CASE("to_string") {
    CHECK(to_string(Word{1, 1, 2}) == "112");
    CHECK(to_string(Word{1, 12}, 12) == "1.12");
}

TEST_CASE("anagram_key and first_word") {
    const LetterFreq key = anagram_key(Word{3, 1, 2, 1});
    CHECK(key.counts == std::map<Letter, int>{{1, 2}, {2, 1}, {3, 1}});
    CHECK(key.first_word() == Word{1, 1, 2, 3});
    CHECK(multinomial_count(key) == 12);
    CHECK(witt_class_count(key) == 3);
}
