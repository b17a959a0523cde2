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
#include "sigkit/accumulator.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sigkit/errors.hpp"

namespace sigkit {
    namespace {
        // A Lie element whose coefficients are polynomials, keyed by basis position.
        using SymbolicLie = std::map<std::size_t, SymbolicCoefficient>;

        Monomial multiply(const Monomial& x, const Monomial& y) {
            Monomial out;
            out.reserve(x.size() + y.size());
            std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
            return out;
        }

        SymbolicCoefficient multiply(const SymbolicCoefficient& p, const SymbolicCoefficient& q) {
            SymbolicCoefficient out;
            for (const auto& [mp, cp] : p) {
                for (const auto& [mq, cq] : q) {
                    auto [it, inserted] = out.try_emplace(multiply(mp, mq), 0);
                    it->second += cp * cq;
                }
            }
            std::erase_if(out, [](const auto& term) { return sgn(term.second) == 0; });
            return out;
        }

        void add_scaled(SymbolicCoefficient& target, const SymbolicCoefficient& p, const mpq_class& scale) {
            for (const auto& [monomial, c] : p) {
                auto [it, inserted] = target.try_emplace(monomial, 0);
                it->second += scale * c;
                if (sgn(it->second) == 0) {
                    target.erase(it);
                }
            }
        }

        std::size_t term_count(const SymbolicLie& x) {
            std::size_t out = 0;
            for (const auto& [position, p] : x) {
                out += p.size();
            }
            return out;
        }

        SymbolicLie bracket(const SymbolicLie& x, const SymbolicLie& y, const HallBasis& basis,
                            ExactProjector& projector, const SymbolicOptions& options) {
            SymbolicLie out;
            const int m = basis.max_level();
            for (const auto& [i, p] : x) {
                const int li = basis[i].level;
                for (const auto& [j, q] : y) {
                    if (li + basis[j].level > m) {
                        break;  // y is ordered by position, hence by level
                    }
                    if (i == j) {
                        continue;
                    }
                    const RationalLieSeries& br = projector.bracket(i, j);
                    if (br.empty()) {
                        continue;
                    }
                    const SymbolicCoefficient product = multiply(p, q);
                    for (const auto& [k, c] : br.terms) {
                        add_scaled(out[k], product, c);
                    }
                }
                if (term_count(out) > options.max_terms) {
                    throw CapacityError("symbolic BCH step exceeds the term budget");
                }
            }
            std::erase_if(out, [](const auto& entry) { return entry.second.empty(); });
            return out;
        }

        struct ByDegree {
            bool operator()(const Monomial& x, const Monomial& y) const {
                if (x.size() != y.size()) {
                    return x.size() < y.size();
                }
                return x < y;
            }
        };

        // The distinct monomials obtained by deleting one input, with the deleted input, smallest first.
        std::vector<std::pair<Monomial, SymbolicInput>> factors(const Monomial& m) {
            std::vector<std::pair<Monomial, SymbolicInput>> out;
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (i > 0 && m[i] == m[i - 1]) {
                    continue;
                }
                Monomial rest = m;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                out.emplace_back(std::move(rest), m[i]);
            }
            std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
            return out;
        }

        Operand input_operand(const SymbolicInput& input) {
            return Operand{input.kind == SymbolicInput::Kind::A ? Operand::Source::A : Operand::Source::B,
                           input.index};
        }

        std::string operand_text(const Operand& o) {
            const char* name = o.source == Operand::Source::A ? "a" : o.source == Operand::Source::B ? "b" : "t";
            return std::string(name) + "[" + std::to_string(o.index) + "]";
        }
    }  // namespace

    std::vector<SymbolicCoefficient> symbolic_bch_step(const HallBasis& basis, const BchSeries& bch,
                                                       const SymbolicOptions& options) {
        const int m = basis.max_level();
        if (bch.max_level < m) {
            throw std::invalid_argument("BCH series is shallower than the basis");
        }
        ExactProjector projector(basis);

        SymbolicLie a_value;
        for (std::size_t k = 0; k < basis.size(); ++k) {
            a_value[k][Monomial{SymbolicInput{SymbolicInput::Kind::A, static_cast<std::uint32_t>(k)}}] = 1;
        }
        SymbolicLie b_value;
        for (int j = 0; j < basis.dimension(); ++j) {
            b_value[static_cast<std::size_t>(j)][Monomial{SymbolicInput{SymbolicInput::Kind::B, static_cast<std::uint32_t>(j)}}] = 1;
        }

        // Values of the two-letter basis elements with a and b substituted, built bottom-up.
        const HallBasis& letters = *bch.basis;
        const std::size_t used = letters.level_offset(m) + letters.level_size(m);
        std::vector<SymbolicLie> values(used);
        SymbolicLie result;
        for (std::size_t e = 0; e < used; ++e) {
            const BasisElt& elt = letters[e];
            if (elt.is_letter()) {
                values[e] = elt.letter == 1 ? a_value : b_value;
            } else {
                values[e] = bracket(values[elt.left], values[elt.right], basis, projector, options);
            }
            const mpq_class& c = bch.coefficients[e];
            if (sgn(c) == 0) {
                continue;
            }
            for (const auto& [k, p] : values[e]) {
                add_scaled(result[k], p, c);
            }
        }

        std::vector<SymbolicCoefficient> out(basis.size());
        for (auto& [k, p] : result) {
            out[k] = std::move(p);
        }
        return out;
    }

    AccumulatorProgram compile_program(const HallBasis& basis, std::span<const SymbolicCoefficient> symbolic) {
        if (symbolic.size() != basis.size()) {
            throw std::invalid_argument("symbolic step does not match the basis");
        }
        AccumulatorProgram program;
        program.d = basis.dimension();
        program.m = basis.max_level();
        program.kind = basis.kind();
        program.basis_size = basis.size();

        std::set<Monomial, ByDegree> needed;
        for (std::size_t k = 0; k < symbolic.size(); ++k) {
            bool seen_a = false;
            bool seen_b = false;
            for (const auto& [monomial, c] : symbolic[k]) {
                if (monomial.size() >= 2) {
                    needed.insert(monomial);
                    continue;
                }
                const SymbolicInput& input = monomial.at(0);
                const bool is_own_a = input.kind == SymbolicInput::Kind::A && input.index == k;
                const bool is_own_b = input.kind == SymbolicInput::Kind::B && input.index == k &&
                                      k < static_cast<std::size_t>(program.d);
                if (c != 1 || !(is_own_a || is_own_b)) {
                    throw std::logic_error("unexpected linear term in the symbolic BCH step");
                }
                seen_a = seen_a || is_own_a;
                seen_b = seen_b || is_own_b;
            }
            if (!seen_a || (k < static_cast<std::size_t>(program.d) && !seen_b)) {
                throw std::logic_error("missing linear term in the symbolic BCH step");
            }
        }

        // Make sure every monomial of degree >= 3 has a stored factor, adding intermediates from the top down.
        const std::size_t max_degree = needed.empty() ? 0 : needed.rbegin()->size();
        for (std::size_t degree = max_degree; degree >= 3; --degree) {
            std::vector<Monomial> layer;
            for (const Monomial& monomial : needed) {
                if (monomial.size() == degree) {
                    layer.push_back(monomial);
                }
            }
            for (const Monomial& monomial : layer) {
                const auto options = factors(monomial);
                const bool stored = std::any_of(options.begin(), options.end(),
                                                [&](const auto& f) { return needed.count(f.first) > 0; });
                if (!stored) {
                    needed.insert(options.front().first);
                }
            }
        }

        std::map<Monomial, std::uint32_t> temp_of;
        for (const Monomial& monomial : needed) {
            std::optional<TempDef> def;
            for (const auto& [rest, input] : factors(monomial)) {
                if (rest.size() == 1) {
                    def = TempDef{input_operand(input), input_operand(rest[0])};
                    break;
                }
                if (auto it = temp_of.find(rest); it != temp_of.end()) {
                    def = TempDef{input_operand(input), Operand{Operand::Source::Temp, it->second}};
                    break;
                }
            }
            if (!def) {
                throw std::logic_error("monomial has no stored factor");
            }
            temp_of.emplace(monomial, static_cast<std::uint32_t>(program.temps.size()));
            program.temps.push_back(*def);
        }

        for (std::size_t k = 0; k < symbolic.size(); ++k) {
            for (const auto& [monomial, c] : symbolic[k]) {
                if (monomial.size() >= 2) {
                    program.accumulations.push_back(
                        AccumOp{static_cast<std::uint32_t>(k), c.get_d(), temp_of.at(monomial)});
                }
            }
        }
        return program;
    }

    void run_program(const AccumulatorProgram& program, std::span<double> a, std::span<const double> b,
                     std::vector<double>& scratch) {
        if (a.size() != program.basis_size) {
            throw std::invalid_argument("log signature length does not match the program");
        }
        if (b.size() != static_cast<std::size_t>(program.d)) {
            throw std::invalid_argument("displacement length does not match the program");
        }
        scratch.resize(program.temps.size());
        double* t = scratch.data();
        auto fetch = [&](const Operand& o) {
            switch (o.source) {
                case Operand::Source::A: return a[o.index];
                case Operand::Source::B: return b[o.index];
                case Operand::Source::Temp: break;
            }
            return t[o.index];
        };
        for (std::size_t i = 0; i < program.temps.size(); ++i) {
            t[i] = fetch(program.temps[i].lhs) * fetch(program.temps[i].rhs);
        }
        for (const AccumOp& op : program.accumulations) {
            a[op.target] += op.scale * t[op.temp];
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[j] += b[j];
        }
    }

    void run_program(const AccumulatorProgram& program, std::span<double> a, std::span<const double> b) {
        std::vector<double> scratch;
        run_program(program, a, b, scratch);
    }

    std::string AccumulatorProgram::listing() const {
        std::ostringstream out;
        out.precision(17);
        for (std::size_t i = 0; i < temps.size(); ++i) {
            out << "t[" << i << "] = " << operand_text(temps[i].lhs) << " * " << operand_text(temps[i].rhs) << '\n';
        }
        for (const AccumOp& op : accumulations) {
            out << "a[" << op.target << "] += " << op.scale << " * t[" << op.temp << "]\n";
        }
        out << "a[0:" << d << "] += b[:]\n";
        return out.str();
    }

}  // namespace sigkit
