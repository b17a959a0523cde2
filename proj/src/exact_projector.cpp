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
#include <algorithm>
#include <stdexcept>

#include "sigkit/lie_basis.hpp"

namespace sigkit {
    namespace {
        // Gauss-Jordan inverse of a nonsingular square integer matrix (row-major).
        std::vector<mpq_class> exact_inverse(const std::vector<std::int64_t>& matrix, std::size_t n) {
            std::vector<mpq_class> a(n * n);
            std::vector<mpq_class> inv(n * n, 0);
            for (std::size_t i = 0; i < n * n; ++i) {
                a[i] = static_cast<long>(matrix[i]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                inv[i * n + i] = 1;
            }
            for (std::size_t col = 0; col < n; ++col) {
                std::size_t pivot = col;
                while (pivot < n && sgn(a[pivot * n + col]) == 0) {
                    ++pivot;
                }
                if (pivot == n) {
                    throw std::logic_error("anagram block restricted to Lyndon rows is singular");
                }
                if (pivot != col) {
                    for (std::size_t k = 0; k < n; ++k) {
                        std::swap(a[pivot * n + k], a[col * n + k]);
                        std::swap(inv[pivot * n + k], inv[col * n + k]);
                    }
                }
                const mpq_class scale = 1 / a[col * n + col];
                for (std::size_t k = 0; k < n; ++k) {
                    a[col * n + k] *= scale;
                    inv[col * n + k] *= scale;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == col || sgn(a[r * n + col]) == 0) {
                        continue;
                    }
                    const mpq_class factor = a[r * n + col];
                    for (std::size_t k = 0; k < n; ++k) {
                        a[r * n + k] -= factor * a[col * n + k];
                        inv[r * n + k] -= factor * inv[col * n + k];
                    }
                }
            }
            return inv;
        }

        Word class_of(std::uint64_t word, int d, int length) {
            Word w = word_at(word, d, length);
            std::sort(w.begin(), w.end());
            return w;
        }
    }  // namespace

    struct ExactProjector::LevelData {
        std::vector<AnagramBlock> blocks;
        std::map<Word, std::size_t> by_first_word;
        std::vector<std::vector<mpq_class>> inverses;  // standard Hall only, filled on demand
    };

    ExactProjector::ExactProjector(const HallBasis& basis)
        : basis_(&basis),
          expansions_(expand_all(basis, basis.max_level())),
          levels_(static_cast<std::size_t>(basis.max_level())) {}

    ExactProjector::~ExactProjector() = default;
    ExactProjector::ExactProjector(ExactProjector&&) noexcept = default;
    ExactProjector& ExactProjector::operator=(ExactProjector&&) noexcept = default;

    ExactProjector::LevelData& ExactProjector::level_data(int level) {
        auto& slot = levels_[static_cast<std::size_t>(level) - 1];
        if (!slot) {
            slot = std::make_unique<LevelData>();
            slot->blocks = mapping_blocks(*basis_, level, expansions_);
            for (std::size_t b = 0; b < slot->blocks.size(); ++b) {
                slot->by_first_word.emplace(slot->blocks[b].key.first_word(), b);
            }
            slot->inverses.resize(slot->blocks.size());
        }
        return *slot;
    }

    RationalLieSeries ExactProjector::project(const WordPolynomial& p) {
        RationalWordPolynomial q;
        q.dimension = p.dimension;
        q.length = p.length;
        q.terms.reserve(p.terms.size());
        for (const auto& [w, c] : p.terms) {
            q.terms.emplace_back(w, mpq_class(static_cast<long>(c)));
        }
        return project(q);
    }

    RationalLieSeries ExactProjector::project(const RationalWordPolynomial& p) {
        RationalLieSeries out;
        if (p.terms.empty()) {
            return out;
        }
        const int d = basis_->dimension();
        if (p.dimension != d) {
            throw std::invalid_argument("word polynomial has the wrong dimension");
        }
        if (p.length < 1 || p.length > basis_->max_level()) {
            throw std::invalid_argument("word polynomial level outside the basis range");
        }
        LevelData& data = level_data(p.length);

        std::map<Word, std::vector<std::pair<std::uint64_t, mpq_class>>> groups;
        for (const auto& term : p.terms) {
            if (sgn(term.second) != 0) {
                groups[class_of(term.first, d, p.length)].push_back(term);
            }
        }
        for (const auto& [first, terms] : groups) {
            auto found = data.by_first_word.find(first);
            if (found == data.by_first_word.end()) {
                throw std::invalid_argument("word polynomial is not a Lie element");
            }
            const std::size_t b = found->second;
            const AnagramBlock& block = data.blocks[b];
            const std::size_t n = block.cols();

            std::vector<mpq_class> x(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t word = block.row_words[block.lyndon_rows[i]];
                auto it = std::lower_bound(terms.begin(), terms.end(), word,
                                           [](const auto& t, std::uint64_t w) { return t.first < w; });
                if (it != terms.end() && it->first == word) {
                    x[i] = it->second;
                }
            }

            std::vector<mpq_class> c(n, 0);
            if (basis_->kind() == BasisKind::Lyndon) {
                for (std::size_t j = 0; j < n; ++j) {
                    c[j] = x[j];
                    for (std::size_t i = 0; i < j; ++i) {
                        const std::int64_t entry = block.restricted_entry(j, i);
                        if (entry != 0) {
                            c[j] -= static_cast<long>(entry) * c[i];
                        }
                    }
                }
            } else {
                auto& inverse = data.inverses[b];
                if (inverse.empty()) {
                    inverse = exact_inverse(block.restricted, n);
                }
                for (std::size_t j = 0; j < n; ++j) {
                    for (std::size_t i = 0; i < n; ++i) {
                        if (sgn(x[i]) != 0) {
                            c[j] += inverse[j * n + i] * x[i];
                        }
                    }
                }
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(c[j]) != 0) {
                    out.terms.emplace_back(block.columns[j], c[j]);
                }
            }
        }
        std::sort(out.terms.begin(), out.terms.end(),
                  [](const auto& x, const auto& y) { return x.first < y.first; });
        return out;
    }

    const RationalLieSeries& ExactProjector::bracket(std::size_t i, std::size_t j) {
        if ((*basis_)[i].level + (*basis_)[j].level > basis_->max_level()) {
            throw std::invalid_argument("bracket level exceeds the basis level");
        }
        auto it = brackets_.find({i, j});
        if (it != brackets_.end()) {
            return it->second;
        }
        RationalLieSeries value;
        if (i != j) {
            value = project(commutator(expansions_[i], expansions_[j]));
        }
        RationalLieSeries swapped = value;
        for (auto& term : swapped.terms) {
            term.second = -term.second;
        }
        brackets_.emplace(std::make_pair(j, i), std::move(swapped));
        return brackets_.emplace(std::make_pair(i, j), std::move(value)).first->second;
    }

    RationalLieSeries lie_bracket_in_basis(const HallBasis& basis, std::size_t i, std::size_t j) {
        if (i >= basis.size() || j >= basis.size()) {
            throw std::invalid_argument("basis position out of range");
        }
        if (basis[i].level + basis[j].level > basis.max_level()) {
            throw std::invalid_argument("bracket level exceeds the basis level");
        }
        ExactProjector projector(basis);
        return projector.bracket(i, j);
    }

}  // namespace sigkit
