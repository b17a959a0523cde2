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
 // Word combinatorics: Lyndon words, anagram classes and their sizes.

#ifndef SIGKIT_WORDS_HPP
#define SIGKIT_WORDS_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sigkit {

    // Letters are 1..d.
    using Letter = int;
    using Word = std::vector<Letter>;

    /* The letter-frequency multiset of a word. Two words are anagrams of each other exactly when they
     * have equal keys. Only letters that occur are stored, so every multiplicity is positive.
     */
    struct LetterFreq {
        std::map<Letter, int> counts;

        int total() const;
        // The alphabetically first word with these frequencies, e.g. {1:2, 3:1} -> 113.
        Word first_word() const;

        friend auto operator<=>(const LetterFreq&, const LetterFreq&) = default;
        friend bool operator==(const LetterFreq&, const LetterFreq&) = default;
    };

    // True iff w is strictly smaller than each of its nontrivial rotations. Throws on the empty word.
    bool is_lyndon(std::span<const Letter> w);

    /* All Lyndon words on {1..d} of length 1..m, generated with Duval's algorithm. Element k-1 of the
     * result holds the words of length k in ascending lexicographic order.
     */
    std::vector<std::vector<Word>> lyndon_words(int d, int m);

    LetterFreq anagram_key(std::span<const Letter> w);

    // m!/(n_1!...n_d!): the number of words in the anagram class.
    mpz_class multinomial_count(const LetterFreq& key);

    // Number of free Lie algebra basis elements whose foliage lies in the class (second Witt formula).
    mpz_class witt_class_count(const LetterFreq& key);

    // Dimension of level m of the free Lie algebra on d letters.
    mpz_class witt_level_count(int d, int m);

    // Every key of total m over d letters, ordered by first word.
    std::vector<LetterFreq> anagram_keys(int d, int m);

    int moebius(int n);

    /* Words of a fixed length are numbered in lexicographic order: letter i contributes the digit i-1
     * in base d. This is the position of the word within its level of a dense tensor.
     */
    std::uint64_t word_index(std::span<const Letter> w, int d);
    Word word_at(std::uint64_t index, int d, int length);

    // d^k, throwing std::overflow_error if it does not fit in 64 bits.
    std::uint64_t checked_power(int d, int k);

    // Letters written out in decimal; separated with '.' when d > 9 so that the rendering is unambiguous.
    std::string to_string(std::span<const Letter> w, int d = 9);

}  // namespace sigkit

#endif  // SIGKIT_WORDS_HPP
