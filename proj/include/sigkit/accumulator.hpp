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
 // Direct log signature accumulation: the BCH product of an arbitrary log signature with one segment,
 // worked out symbolically and compiled into a branch-free straight-line program.

#ifndef SIGKIT_ACCUMULATOR_HPP
#define SIGKIT_ACCUMULATOR_HPP

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sigkit/bch.hpp"
#include "sigkit/lie_basis.hpp"

namespace sigkit {

    /* An indeterminate: a[index] is the coefficient of basis element index in the running log signature,
     * b[index] is coordinate index of the new displacement.
     */
    struct SymbolicInput {
        enum class Kind : std::uint8_t { A, B };
        Kind kind = Kind::A;
        std::uint32_t index = 0;

        friend auto operator<=>(const SymbolicInput&, const SymbolicInput&) = default;
        friend bool operator==(const SymbolicInput&, const SymbolicInput&) = default;
    };

    // A product of inputs, kept sorted. Compared lexicographically.
    using Monomial = std::vector<SymbolicInput>;

    // A polynomial in the inputs with exact coefficients and no zero terms.
    using SymbolicCoefficient = std::map<Monomial, mpq_class>;

    struct SymbolicOptions {
        // Upper bound on the total number of polynomial terms alive in one Lie element; beyond it the
        // calculation is abandoned with CapacityError.
        std::size_t max_terms = 20'000'000;
    };

    /* The new log signature, coefficient by basis position, as polynomials in the a and b inputs: the BCH
     * product of sum_k a[k] e_k with sum_j b[j] e_j (letters), truncated at the basis level.
     * Requires bch.max_level >= basis.max_level().
     */
    std::vector<SymbolicCoefficient> symbolic_bch_step(const HallBasis& basis, const BchSeries& bch,
                                                       const SymbolicOptions& options = {});

    struct Operand {
        enum class Source : std::uint8_t { A, B, Temp };
        Source source = Source::A;
        std::uint32_t index = 0;

        friend bool operator==(const Operand&, const Operand&) = default;
    };

    // t[i] = lhs * rhs
    struct TempDef {
        Operand lhs;
        Operand rhs;
    };

    // a[target] += scale * t[temp]
    struct AccumOp {
        std::uint32_t target = 0;
        double scale = 0;
        std::uint32_t temp = 0;
    };

    /* Accumulates one displacement into a log signature in place: evaluate every temporary from the old a
     * and b, apply the accumulations, then a[0..d-1] += b[0..d-1].
     */
    struct AccumulatorProgram {
        int d = 0;
        int m = 0;
        BasisKind kind = BasisKind::Lyndon;
        std::size_t basis_size = 0;
        std::vector<TempDef> temps;
        std::vector<AccumOp> accumulations;

        // Multi-line listing in the style "t[0] = b[1] * a[0]", "a[2] += 0.5 * t[0]"... for inspection.
        std::string listing() const;
    };

    /* Deduplicates the nonlinear monomials into temporaries. A monomial of degree k >= 3 is the product of
     * one input and a stored monomial of degree k-1, choosing the smallest such stored factor; when none
     * is stored the smallest factor is stored too. Temporaries are ordered by degree, then monomial.
     * The linear part must be exactly a[k] at k plus b[j] at letter j; anything else is a logic error.
     */
    AccumulatorProgram compile_program(const HallBasis& basis, std::span<const SymbolicCoefficient> symbolic);

    // Throws std::invalid_argument on size mismatch. scratch is resized as needed.
    void run_program(const AccumulatorProgram& program, std::span<double> a, std::span<const double> b,
                     std::vector<double>& scratch);
    void run_program(const AccumulatorProgram& program, std::span<double> a, std::span<const double> b);

}  // namespace sigkit

#endif  // SIGKIT_ACCUMULATOR_HPP
