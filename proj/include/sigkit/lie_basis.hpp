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
 // Hall bases of the free Lie algebra, their expansion into tensor words, and the anagram-block
 // structure of the resulting mapping matrices.

#ifndef SIGKIT_LIE_BASIS_HPP
#define SIGKIT_LIE_BASIS_HPP

#include <gmpxx.h>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sigkit/words.hpp"

namespace sigkit {

    enum class BasisKind { Lyndon, StandardHall };

    std::string to_string(BasisKind kind);
    // Accepts "lyndon" and "hall" (or "standard"). Throws std::invalid_argument otherwise.
    BasisKind parse_basis_kind(const std::string& name);

    /* A basis element: either a single letter, or the bracket of two earlier elements of the same basis,
     * referred to by their positions.
     */
    struct BasisElt {
        Letter letter = 0;
        std::size_t left = 0;
        std::size_t right = 0;
        int level = 1;
        Word foliage;

        bool is_letter() const { return letter != 0; }
    };

    class HallBasis {
    public:
        HallBasis(int d, int m, BasisKind kind);

        int dimension() const { return d_; }
        int max_level() const { return m_; }
        BasisKind kind() const { return kind_; }

        std::size_t size() const { return elements_.size(); }
        const BasisElt& operator[](std::size_t i) const { return elements_[i]; }
        std::span<const BasisElt> elements() const { return elements_; }

        // Level k occupies positions [level_offset(k), level_offset(k) + level_size(k)).
        std::size_t level_offset(int k) const { return level_offsets_[static_cast<std::size_t>(k) - 1]; }
        std::size_t level_size(int k) const {
            return level_offsets_[static_cast<std::size_t>(k)] - level_offsets_[static_cast<std::size_t>(k) - 1];
        }
        std::span<const BasisElt> level(int k) const;

        std::optional<std::size_t> find_letter(Letter l) const;
        std::optional<std::size_t> find_bracket(std::size_t left, std::size_t right) const;

        // "[1,[1,2]]" style rendering used for labels.
        std::string label(std::size_t i) const;

        // The defining order of the basis, evaluated structurally. Agrees with position order.
        std::strong_ordering compare(std::size_t i, std::size_t j) const;

    private:
        void build_lyndon();
        void build_standard_hall();
        void push_bracket(std::size_t left, std::size_t right);

        int d_;
        int m_;
        BasisKind kind_;
        std::vector<BasisElt> elements_;
        std::vector<std::size_t> level_offsets_;
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> bracket_index_;
    };

    HallBasis build_basis(int d, int m, BasisKind kind);

    // Standard factorization w = uv of a Lyndon word, v being its longest proper Lyndon suffix.
    std::pair<Word, Word> standard_factorize(std::span<const Letter> w);

    /* Compares element i of basis a with element j of basis b. Both bases must be of the same kind;
     * their dimensions and levels may differ.
     */
    std::strong_ordering compare_elements(const HallBasis& a, std::size_t i, const HallBasis& b, std::size_t j);

    /* A homogeneous polynomial in words of one length. Words are stored by lexicographic index (see
     * word_index) in ascending order, and no zero coefficients are kept.
     */
    template <typename Coefficient>
    struct BasicWordPolynomial {
        int dimension = 1;
        int length = 0;
        std::vector<std::pair<std::uint64_t, Coefficient>> terms;

        // Zero when absent.
        Coefficient coefficient(std::span<const Letter> w) const;
    };

    using WordPolynomial = BasicWordPolynomial<std::int64_t>;
    using RationalWordPolynomial = BasicWordPolynomial<mpq_class>;

    // Multiplies out the brackets of basis element i.
    WordPolynomial expand(const HallBasis& basis, std::size_t i);
    // Expansions of every element of level at most max_level, indexed by position.
    std::vector<WordPolynomial> expand_all(const HallBasis& basis, int max_level);
    // [P, Q] = PQ - QP in the tensor algebra.
    WordPolynomial commutator(const WordPolynomial& p, const WordPolynomial& q);

    /* The part of the level mapping matrix belonging to one anagram class. Rows are the words of the class
     * in alphabetical order; columns are the basis elements whose foliage is in the class, in basis
     * order. Columns are held sparsely.
     */
    struct AnagramBlock {
        LetterFreq key;
        std::vector<std::uint64_t> row_words;
        std::vector<std::size_t> columns;
        // Per column: (row position, coefficient), ascending by row.
        std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> column_entries;
        // Row positions of the Lyndon words of the class, alphabetical. There are as many as columns.
        std::vector<std::uint32_t> lyndon_rows;
        // The block restricted to lyndon_rows, row-major, square. Unit lower triangular for the Lyndon basis.
        std::vector<std::int64_t> restricted;

        std::size_t rows() const { return row_words.size(); }
        std::size_t cols() const { return columns.size(); }
        std::int64_t entry(std::size_t row, std::size_t col) const;
        std::int64_t restricted_entry(std::size_t row, std::size_t col) const {
            return restricted[row * cols() + col];
        }
        // Row-major rows() x cols() copy of the block.
        std::vector<std::int64_t> dense() const;
    };

    // One block per anagram class of the level that contains at least one basis element.
    std::vector<AnagramBlock> mapping_blocks(const HallBasis& basis, int level);
    // As above, reusing expansions from expand_all.
    std::vector<AnagramBlock> mapping_blocks(const HallBasis& basis, int level,
                                             std::span<const WordPolynomial> expansions);

    // Exact coordinates over a basis: (position, coefficient), ascending by position, nonzero.
    struct RationalLieSeries {
        std::vector<std::pair<std::size_t, mpq_class>> terms;

        bool empty() const { return terms.empty(); }
        mpq_class coefficient(std::size_t position) const;
    };

    /* Solves the anagram-block systems exactly. Each block is solved on its Lyndon rows, which always form a
     * nonsingular square system; for the Lyndon basis that is forward substitution, for the standard Hall
     * basis an exact inverse is computed on first use. Blocks are built lazily per level, so an instance
     * must not be shared between threads.
     */
    class ExactProjector {
    public:
        explicit ExactProjector(const HallBasis& basis);
        ~ExactProjector();
        ExactProjector(ExactProjector&&) noexcept;
        ExactProjector& operator=(ExactProjector&&) noexcept;

        const HallBasis& basis() const { return *basis_; }

        // Coordinates of a Lie polynomial given by its expansion. Throws std::invalid_argument if the
        // polynomial has weight on an anagram class with no basis elements.
        RationalLieSeries project(const RationalWordPolynomial& p);
        RationalLieSeries project(const WordPolynomial& p);

        const WordPolynomial& expansion(std::size_t i) const { return expansions_[i]; }

        // [e_i, e_j] in the basis, memoised.
        const RationalLieSeries& bracket(std::size_t i, std::size_t j);

    private:
        struct LevelData;
        LevelData& level_data(int level);

        const HallBasis* basis_;
        std::vector<WordPolynomial> expansions_;
        std::vector<std::unique_ptr<LevelData>> levels_;
        std::map<std::pair<std::size_t, std::size_t>, RationalLieSeries> brackets_;
    };

    // [e_i, e_j] expressed in the basis. Throws std::invalid_argument when the combined level exceeds m.
    RationalLieSeries lie_bracket_in_basis(const HallBasis& basis, std::size_t i, std::size_t j);

    template <typename Coefficient>
    Coefficient BasicWordPolynomial<Coefficient>::coefficient(std::span<const Letter> w) const {
        if (static_cast<int>(w.size()) != length) {
            return Coefficient(0);
        }
        const std::uint64_t index = word_index(w, dimension);
        auto it = std::lower_bound(terms.begin(), terms.end(), index,
                                   [](const auto& term, std::uint64_t value) { return term.first < value; });
        if (it == terms.end() || it->first != index) {
            return Coefficient(0);
        }
        return it->second;
    }

}  // namespace sigkit

#endif  // SIGKIT_LIE_BASIS_HPP
