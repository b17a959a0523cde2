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
#include "sigkit/lie_basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigkit {
    namespace {
        using Terms = std::vector<std::pair<std::uint64_t, std::int64_t>>;

        // Sorts by word and merges equal words, dropping zeros.
        void normalise(Terms& terms) {
            std::sort(terms.begin(), terms.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            std::size_t out = 0;
            for (std::size_t i = 0; i < terms.size();) {
                std::uint64_t word = terms[i].first;
                std::int64_t sum = 0;
                for (; i < terms.size() && terms[i].first == word; ++i) {
                    sum += terms[i].second;
                }
                if (sum != 0) {
                    terms[out++] = {word, sum};
                }
            }
            terms.resize(out);
        }

        void append_concatenation(const WordPolynomial& p, const WordPolynomial& q, std::int64_t sign,
                                  Terms& out) {
            const std::uint64_t shift = checked_power(p.dimension, q.length);
            for (const auto& [pw, pc] : p.terms) {
                for (const auto& [qw, qc] : q.terms) {
                    out.emplace_back(pw * shift + qw, sign * pc * qc);
                }
            }
        }

        void append_label(const HallBasis& basis, std::size_t i, std::string& out) {
            const BasisElt& e = basis[i];
            if (e.is_letter()) {
                out += std::to_string(e.letter);
                return;
            }
            out += '[';
            append_label(basis, e.left, out);
            out += ',';
            append_label(basis, e.right, out);
            out += ']';
        }
    }  // namespace

    std::string to_string(BasisKind kind) {
        return kind == BasisKind::Lyndon ? "lyndon" : "hall";
    }

    BasisKind parse_basis_kind(const std::string& name) {
        if (name == "lyndon" || name == "Lyndon" || name == "l" || name == "L") {
            return BasisKind::Lyndon;
        }
        if (name == "hall" || name == "Hall" || name == "standard" || name == "h" || name == "H") {
            return BasisKind::StandardHall;
        }
        throw std::invalid_argument("unknown basis '" + name + "' (expected lyndon or hall)");
    }

    std::pair<Word, Word> standard_factorize(std::span<const Letter> w) {
        if (w.size() < 2) {
            throw std::invalid_argument("standard factorization needs a word of length at least 2");
        }
        if (!is_lyndon(w)) {
            throw std::invalid_argument("standard factorization of a non-Lyndon word");
        }
        for (std::size_t split = 1; split < w.size(); ++split) {
            if (is_lyndon(w.subspan(split))) {
                return {Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(split)),
                        Word(w.begin() + static_cast<std::ptrdiff_t>(split), w.end())};
            }
        }
        // The last letter alone is always Lyndon.
        throw std::logic_error("unreachable");
    }

    HallBasis::HallBasis(int d, int m, BasisKind kind) : d_(d), m_(m), kind_(kind) {
        if (d < 1 || m < 1) {
            throw std::invalid_argument("basis needs dimension and level at least 1");
        }
        level_offsets_.push_back(0);
        for (Letter l = 1; l <= d; ++l) {
            BasisElt e;
            e.letter = l;
            e.level = 1;
            e.foliage = {l};
            elements_.push_back(std::move(e));
        }
        level_offsets_.push_back(elements_.size());
        if (kind == BasisKind::Lyndon) {
            build_lyndon();
        } else {
            build_standard_hall();
        }
        for (int k = 1; k <= m; ++k) {
            if (witt_level_count(d, k) != static_cast<unsigned long>(level_size(k))) {
                throw std::logic_error("basis level size disagrees with the Witt formula");
            }
        }
    }

    void HallBasis::push_bracket(std::size_t left, std::size_t right) {
        BasisElt e;
        e.left = left;
        e.right = right;
        e.level = elements_[left].level + elements_[right].level;
        e.foliage = elements_[left].foliage;
        e.foliage.insert(e.foliage.end(), elements_[right].foliage.begin(), elements_[right].foliage.end());
        bracket_index_.emplace(std::make_pair(left, right), elements_.size());
        elements_.push_back(std::move(e));
    }

    void HallBasis::build_lyndon() {
        const auto words = lyndon_words(d_, m_);
        std::map<Word, std::size_t> by_foliage;
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            by_foliage.emplace(elements_[i].foliage, i);
        }
        for (int k = 2; k <= m_; ++k) {
            for (const Word& w : words[static_cast<std::size_t>(k) - 1]) {
                auto [u, v] = standard_factorize(w);
                by_foliage.emplace(w, elements_.size());
                push_bracket(by_foliage.at(u), by_foliage.at(v));
            }
            level_offsets_.push_back(elements_.size());
        }
    }

    void HallBasis::build_standard_hall() {
        // [A,B] is admitted when A < B and B is either a letter or [C,D] with C <= A. Because positions
        // already follow the basis order, ordering candidates by (A, B) position is the recursive rule.
        for (int k = 2; k <= m_; ++k) {
            std::vector<std::pair<std::size_t, std::size_t>> candidates;
            for (int left_level = 1; 2 * left_level <= k; ++left_level) {
                const int right_level = k - left_level;
                for (std::size_t a = level_offset(left_level); a < level_offsets_[static_cast<std::size_t>(left_level)]; ++a) {
                    for (std::size_t b = level_offset(right_level); b < level_offsets_[static_cast<std::size_t>(right_level)]; ++b) {
                        if (a >= b) {
                            continue;
                        }
                        const BasisElt& eb = elements_[b];
                        if (eb.is_letter() || eb.left <= a) {
                            candidates.emplace_back(a, b);
                        }
                    }
                }
            }
            std::sort(candidates.begin(), candidates.end());
            for (const auto& [a, b] : candidates) {
                push_bracket(a, b);
            }
            level_offsets_.push_back(elements_.size());
        }
    }

    std::span<const BasisElt> HallBasis::level(int k) const {
        return std::span<const BasisElt>(elements_).subspan(level_offset(k), level_size(k));
    }

    std::optional<std::size_t> HallBasis::find_letter(Letter l) const {
        if (l < 1 || l > d_) {
            return std::nullopt;
        }
        return static_cast<std::size_t>(l - 1);
    }

    std::optional<std::size_t> HallBasis::find_bracket(std::size_t left, std::size_t right) const {
        auto it = bracket_index_.find({left, right});
        if (it == bracket_index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::string HallBasis::label(std::size_t i) const {
        std::string out;
        append_label(*this, i, out);
        return out;
    }

    std::strong_ordering HallBasis::compare(std::size_t i, std::size_t j) const {
        return compare_elements(*this, i, *this, j);
    }

    HallBasis build_basis(int d, int m, BasisKind kind) {
        return HallBasis(d, m, kind);
    }

    std::strong_ordering compare_elements(const HallBasis& a, std::size_t i, const HallBasis& b, std::size_t j) {
        if (a.kind() != b.kind()) {
            throw std::invalid_argument("cannot compare elements of different basis kinds");
        }
        const BasisElt& x = a[i];
        const BasisElt& y = b[j];
        if (x.level != y.level) {
            return x.level <=> y.level;
        }
        if (x.is_letter()) {
            return x.letter <=> y.letter;
        }
        if (a.kind() == BasisKind::Lyndon) {
            return x.foliage <=> y.foliage;
        }
        if (auto c = compare_elements(a, x.left, b, y.left); c != 0) {
            return c;
        }
        return compare_elements(a, x.right, b, y.right);
    }

    WordPolynomial commutator(const WordPolynomial& p, const WordPolynomial& q) {
        WordPolynomial out;
        out.dimension = p.dimension;
        out.length = p.length + q.length;
        out.terms.reserve(2 * p.terms.size() * q.terms.size());
        append_concatenation(p, q, 1, out.terms);
        append_concatenation(q, p, -1, out.terms);
        normalise(out.terms);
        return out;
    }

    WordPolynomial expand(const HallBasis& basis, std::size_t i) {
        const BasisElt& e = basis[i];
        if (e.is_letter()) {
            WordPolynomial out;
            out.dimension = basis.dimension();
            out.length = 1;
            out.terms.emplace_back(static_cast<std::uint64_t>(e.letter - 1), 1);
            return out;
        }
        return commutator(expand(basis, e.left), expand(basis, e.right));
    }

    std::vector<WordPolynomial> expand_all(const HallBasis& basis, int max_level) {
        max_level = std::min(max_level, basis.max_level());
        const std::size_t count = basis.level_offset(max_level) + basis.level_size(max_level);
        std::vector<WordPolynomial> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            const BasisElt& e = basis[i];
            if (e.is_letter()) {
                WordPolynomial p;
                p.dimension = basis.dimension();
                p.length = 1;
                p.terms.emplace_back(static_cast<std::uint64_t>(e.letter - 1), 1);
                out.push_back(std::move(p));
            } else {
                out.push_back(commutator(out[e.left], out[e.right]));
            }
        }
        return out;
    }

    std::int64_t AnagramBlock::entry(std::size_t row, std::size_t col) const {
        const auto& column = column_entries[col];
        auto it = std::lower_bound(column.begin(), column.end(), row,
                                   [](const auto& x, std::size_t r) { return x.first < r; });
        if (it == column.end() || it->first != row) {
            return 0;
        }
        return it->second;
    }

    std::vector<std::int64_t> AnagramBlock::dense() const {
        std::vector<std::int64_t> out(rows() * cols(), 0);
        for (std::size_t c = 0; c < cols(); ++c) {
            for (const auto& [r, v] : column_entries[c]) {
                out[r * cols() + c] = v;
            }
        }
        return out;
    }

    std::vector<AnagramBlock> mapping_blocks(const HallBasis& basis, int level) {
        return mapping_blocks(basis, level, expand_all(basis, level));
    }

    std::vector<AnagramBlock> mapping_blocks(const HallBasis& basis, int level,
                                             std::span<const WordPolynomial> expansions) {
        if (level < 1 || level > basis.max_level()) {
            throw std::invalid_argument("level outside the basis range");
        }
        const int d = basis.dimension();
        std::map<Word, std::vector<std::size_t>> classes;
        const std::size_t begin = basis.level_offset(level);
        for (std::size_t i = begin; i < begin + basis.level_size(level); ++i) {
            classes[anagram_key(basis[i].foliage).first_word()].push_back(i);
        }

        std::vector<AnagramBlock> out;
        out.reserve(classes.size());
        for (auto& [first, columns] : classes) {
            AnagramBlock block;
            block.key = anagram_key(first);
            block.columns = std::move(columns);
            Word w = first;
            do {
                block.row_words.push_back(word_index(w, d));
                if (is_lyndon(w)) {
                    block.lyndon_rows.push_back(static_cast<std::uint32_t>(block.row_words.size() - 1));
                }
            } while (std::next_permutation(w.begin(), w.end()));

            if (block.lyndon_rows.size() != block.columns.size()) {
                throw std::logic_error("anagram class has a mismatched number of Lyndon words");
            }
            std::vector<std::int32_t> lyndon_position(block.row_words.size(), -1);
            for (std::size_t i = 0; i < block.lyndon_rows.size(); ++i) {
                lyndon_position[block.lyndon_rows[i]] = static_cast<std::int32_t>(i);
            }

            const std::size_t n = block.columns.size();
            block.restricted.assign(n * n, 0);
            block.column_entries.resize(n);
            for (std::size_t c = 0; c < n; ++c) {
                const WordPolynomial& p = expansions[block.columns[c]];
                auto& column = block.column_entries[c];
                column.reserve(p.terms.size());
                for (const auto& [word, coefficient] : p.terms) {
                    auto it = std::lower_bound(block.row_words.begin(), block.row_words.end(), word);
                    if (it == block.row_words.end() || *it != word) {
                        throw std::logic_error("expansion leaves its anagram class");
                    }
                    const auto row = static_cast<std::uint32_t>(it - block.row_words.begin());
                    column.emplace_back(row, coefficient);
                    if (lyndon_position[row] >= 0) {
                        block.restricted[static_cast<std::size_t>(lyndon_position[row]) * n + c] = coefficient;
                    }
                }
            }
            out.push_back(std::move(block));
        }
        return out;
    }

    mpq_class RationalLieSeries::coefficient(std::size_t position) const {
        auto it = std::lower_bound(terms.begin(), terms.end(), position,
                                   [](const auto& x, std::size_t p) { return x.first < p; });
        if (it == terms.end() || it->first != position) {
            return 0;
        }
        return it->second;
    }

}  // namespace sigkit
