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
#include "sigkit/words.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sigkit {
    namespace {
        mpz_class factorial(unsigned long n) {
            mpz_class out;
            mpz_fac_ui(out.get_mpz_t(), n);
            return out;
        }

        void check_dimension_level(int d, int m) {
            if (d < 1) {
                throw std::invalid_argument("dimension must be at least 1");
            }
            if (m < 1) {
                throw std::invalid_argument("level must be at least 1");
            }
        }

        void compositions(int d, int remaining, int letter, std::vector<int>& current,
                          std::vector<LetterFreq>& out) {
            if (letter == d) {
                current[letter - 1] = remaining;
                LetterFreq key;
                for (int i = 0; i < d; ++i) {
                    if (current[i] > 0) {
                        key.counts.emplace(i + 1, current[i]);
                    }
                }
                out.push_back(std::move(key));
                return;
            }
            for (int n = remaining; n >= 0; --n) {
                current[letter - 1] = n;
                compositions(d, remaining - n, letter + 1, current, out);
            }
        }
    }  // namespace

    int LetterFreq::total() const {
        int out = 0;
        for (const auto& [letter, count] : counts) {
            out += count;
        }
        return out;
    }

    Word LetterFreq::first_word() const {
        Word out;
        for (const auto& [letter, count] : counts) {
            out.insert(out.end(), count, letter);
        }
        return out;
    }

    bool is_lyndon(std::span<const Letter> w) {
        if (w.empty()) {
            throw std::invalid_argument("the empty word has no Lyndon status");
        }
        const std::size_t n = w.size();
        for (std::size_t shift = 1; shift < n; ++shift) {
            // compare w with its rotation starting at shift
            for (std::size_t i = 0; i < n; ++i) {
                const Letter rotated = w[(i + shift) % n];
                if (w[i] < rotated) {
                    break;
                }
                if (w[i] > rotated || i + 1 == n) {
                    return false;
                }
            }
        }
        return true;
    }

    std::vector<std::vector<Word>> lyndon_words(int d, int m) {
        check_dimension_level(d, m);
        std::vector<std::vector<Word>> out(static_cast<std::size_t>(m));
        Word w{1};
        while (!w.empty()) {
            out[w.size() - 1].push_back(w);
            const std::size_t period = w.size();
            while (w.size() < static_cast<std::size_t>(m)) {
                w.push_back(w[w.size() - period]);
            }
            while (!w.empty() && w.back() == d) {
                w.pop_back();
            }
            if (!w.empty()) {
                ++w.back();
            }
        }
        return out;
    }

    LetterFreq anagram_key(std::span<const Letter> w) {
        if (w.empty()) {
            throw std::invalid_argument("anagram key of the empty word");
        }
        LetterFreq key;
        for (Letter l : w) {
            ++key.counts[l];
        }
        return key;
    }

    mpz_class multinomial_count(const LetterFreq& key) {
        mpz_class out = factorial(static_cast<unsigned long>(key.total()));
        for (const auto& [letter, count] : key.counts) {
            out /= factorial(static_cast<unsigned long>(count));
        }
        return out;
    }

    int moebius(int n) {
        if (n < 1) {
            throw std::invalid_argument("moebius is defined on positive integers");
        }
        int out = 1;
        for (int p = 2; p * p <= n; ++p) {
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) {
                    return 0;
                }
                out = -out;
            }
        }
        if (n > 1) {
            out = -out;
        }
        return out;
    }

    mpz_class witt_class_count(const LetterFreq& key) {
        const int m = key.total();
        if (m < 1) {
            throw std::invalid_argument("empty letter-frequency key");
        }
        int g = 0;
        for (const auto& [letter, count] : key.counts) {
            g = std::gcd(g, count);
        }
        mpz_class sum = 0;
        for (int delta = 1; delta <= g; ++delta) {
            if (g % delta != 0) {
                continue;
            }
            const int mu = moebius(delta);
            if (mu == 0) {
                continue;
            }
            mpz_class term = factorial(static_cast<unsigned long>(m / delta));
            for (const auto& [letter, count] : key.counts) {
                term /= factorial(static_cast<unsigned long>(count / delta));
            }
            sum += mu * term;
        }
        return sum / m;
    }

    mpz_class witt_level_count(int d, int m) {
        check_dimension_level(d, m);
        mpz_class sum = 0;
        for (int delta = 1; delta <= m; ++delta) {
            if (m % delta != 0) {
                continue;
            }
            mpz_class power;
            mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(d),
                          static_cast<unsigned long>(m / delta));
            sum += moebius(delta) * power;
        }
        return sum / m;
    }

    std::vector<LetterFreq> anagram_keys(int d, int m) {
        check_dimension_level(d, m);
        std::vector<LetterFreq> out;
        std::vector<int> current(static_cast<std::size_t>(d), 0);
        compositions(d, m, 1, current, out);
        // Descending n_1, then descending n_2, ... is exactly ascending first word.
        return out;
    }

    std::uint64_t checked_power(int d, int k) {
        std::uint64_t out = 1;
        for (int i = 0; i < k; ++i) {
            if (out > UINT64_MAX / static_cast<std::uint64_t>(d)) {
                throw std::overflow_error("d^k does not fit in 64 bits");
            }
            out *= static_cast<std::uint64_t>(d);
        }
        return out;
    }

    std::uint64_t word_index(std::span<const Letter> w, int d) {
        std::uint64_t out = 0;
        for (Letter l : w) {
            if (l < 1 || l > d) {
                throw std::invalid_argument("letter out of range");
            }
            out = out * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(l - 1);
        }
        return out;
    }

    Word word_at(std::uint64_t index, int d, int length) {
        Word out(static_cast<std::size_t>(length));
        for (int i = length - 1; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = static_cast<Letter>(index % static_cast<std::uint64_t>(d)) + 1;
            index /= static_cast<std::uint64_t>(d);
        }
        return out;
    }

    std::string to_string(std::span<const Letter> w, int d) {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (d > 9 && i > 0) {
                out += '.';
            }
            out += std::to_string(w[i]);
        }
        return out;
    }

}  // namespace sigkit
