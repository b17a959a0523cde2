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

#include <cmath>

#include "sigkit/accumulator.hpp"
#include "sigkit/errors.hpp"
#include "sigkit/tensor_algebra.hpp"
#include "support/oracles.hpp"

using namespace sigkit;

namespace {
    // Accumulation in the Lyndon basis at d=2, m=2, written out by hand.
    void hand_f22(std::vector<double>& a, const std::vector<double>& b) {
        double t[2];
        t[0] = b[1] * a[0];
        t[1] = b[0] * a[1];
        a[2] += t[0] / 2;
        a[2] -= t[1] / 2;
        a[0] += b[0];
        a[1] += b[1];
    }

    // The same at d=2, m=3.
    void hand_f23(std::vector<double>& a, const std::vector<double>& b) {
        double t[12];
        t[0] = b[1] * a[0];
        t[1] = b[1] * a[2];
        t[2] = b[0] * a[1];
        t[3] = b[0] * a[2];
        t[4] = b[1] * t[0];
        t[5] = b[0] * t[0];
        t[6] = b[1] * t[2];
        t[7] = a[0] * t[0];
        t[8] = a[1] * t[0];
        t[9] = b[0] * t[2];
        t[10] = a[0] * t[2];
        t[11] = a[1] * t[2];
        a[2] += t[0] / 2 - t[2] / 2;
        a[3] += -t[3] / 2 - t[5] / 12 + t[7] / 12 + t[9] / 12 - t[10] / 12;
        a[4] += t[1] / 2 + t[4] / 12 - t[6] / 12 - t[8] / 12 + t[11] / 12;
        a[0] += b[0];
        a[1] += b[1];
    }

    AccumulatorProgram program_for(int d, int m, BasisKind kind) {
        const HallBasis basis(d, m, kind);
        const auto step = symbolic_bch_step(basis, derive_bch(m));
        return compile_program(basis, step);
    }

    mpq_class evaluate(const SymbolicCoefficient& p, const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
        mpq_class out = 0;
        for (const auto& [monomial, c] : p) {
            mpq_class term = c;
            for (const SymbolicInput& x : monomial) {
                term *= x.kind == SymbolicInput::Kind::A ? a[x.index] : b[x.index];
            }
            out += term;
        }
        return out;
    }

    using Exact = BasicTensorSeries<mpq_class>;

    Exact lie_to_tensor(const HallBasis& basis, const std::vector<mpq_class>& coefficients) {
        Exact out(basis.dimension(), basis.max_level());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            for (const auto& [w, c] : expand(basis, i).terms) {
                out.level(basis[i].level)[w] += coefficients[i] * c;
            }
        }
        return out;
    }
}  // namespace

TEST_CASE("compiled programs reproduce the hand-written accumulators") {
    const AccumulatorProgram p22 = program_for(2, 2, BasisKind::Lyndon);
    const AccumulatorProgram p23 = program_for(2, 3, BasisKind::Lyndon);
    CHECK(p22.temps.size() == 2);
    CHECK(p23.temps.size() == 12);
    CHECK(p22.accumulations.size() == 2);
    CHECK(p23.accumulations.size() == 12);
    oracle::Gen gen(21);
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        for (const auto& [program, hand, size] :
             {std::tuple{&p22, &hand_f22, std::size_t{3}}, std::tuple{&p23, &hand_f23, std::size_t{5}}}) {
            std::vector<double> a = gen.vector(size, -2, 2);
            const std::vector<double> b = gen.vector(2, -2, 2);
            std::vector<double> expected = a;
            hand(expected, b);
            run_program(*program, a, b);
            worst = std::max(worst, oracle::max_abs_diff(a, expected));
        }
    }
    CHECK(worst <= 1e-14);
}

TEST_CASE("temporaries are built from inputs or earlier temporaries") {
    for (BasisKind kind : {BasisKind::Lyndon, BasisKind::StandardHall}) {
        const AccumulatorProgram p = program_for(3, 4, kind);
        CHECK(p.basis_size == HallBasis(3, 4, kind).size());
        for (std::size_t i = 0; i < p.temps.size(); ++i) {
            for (const Operand& o : {p.temps[i].lhs, p.temps[i].rhs}) {
                if (o.source == Operand::Source::Temp) {
                    CHECK(o.index < i);
                } else if (o.source == Operand::Source::B) {
                    CHECK(o.index < 3);
                } else {
                    CHECK(o.index < p.basis_size);
                }
            }
        }
        for (const AccumOp& op : p.accumulations) {
            CHECK(op.target >= 3);  // letters only ever receive b
            CHECK(op.temp < p.temps.size());
        }
    }
}

TEST_CASE("the symbolic step is exactly the BCH product") {
    oracle::Gen gen(22);
    for (BasisKind kind : {BasisKind::Lyndon, BasisKind::StandardHall}) {
        for (const auto& [d, m] : {std::pair{2, 5}, std::pair{3, 4}, std::pair{1, 3}}) {
            const HallBasis basis(d, m, kind);
            ExactProjector projector(basis);
            const auto step = symbolic_bch_step(basis, derive_bch(m));
            for (int trial = 0; trial < 3; ++trial) {
                std::vector<mpq_class> a(basis.size());
                for (auto& v : a) {
                    v = mpq_class(gen.integer(-9, 9), gen.integer(1, 5));
                    v.canonicalize();
                }
                std::vector<mpq_class> b(static_cast<std::size_t>(d));
                for (auto& v : b) {
                    v = mpq_class(gen.integer(-9, 9), gen.integer(1, 5));
                    v.canonicalize();
                }
                const Exact log = tensor_log(concat_product(tensor_exp(lie_to_tensor(basis, a)),
                                                            segment_signature<mpq_class>(b, m)));
                std::vector<mpq_class> expected(basis.size(), 0);
                for (int k = 1; k <= m; ++k) {
                    RationalWordPolynomial p;
                    p.dimension = d;
                    p.length = k;
                    for (std::size_t w = 0; w < log.level(k).size(); ++w) {
                        if (sgn(log.level(k)[w]) != 0) {
                            p.terms.emplace_back(w, log.level(k)[w]);
                        }
                    }
                    for (const auto& [pos, c] : projector.project(p).terms) {
                        expected[pos] = c;
                    }
                }
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    CHECK(evaluate(step[i], a, b) == expected[i]);
                }
            }
        }
    }
}

TEST_CASE("running a program evaluates the symbolic step") {
    oracle::Gen gen(23);
    const HallBasis basis(3, 5, BasisKind::StandardHall);
    const auto step = symbolic_bch_step(basis, derive_bch(5));
    const AccumulatorProgram program = compile_program(basis, step);
    for (int trial = 0; trial < 20; ++trial) {
        const std::vector<double> a0 = gen.vector(basis.size());
        const std::vector<double> b = gen.vector(3);
        std::vector<double> a = a0;
        std::vector<double> scratch;
        run_program(program, a, b, scratch);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            double expected = 0;
            for (const auto& [monomial, c] : step[i]) {
                double term = c.get_d();
                for (const SymbolicInput& x : monomial) {
                    term *= x.kind == SymbolicInput::Kind::A ? a0[x.index] : b[x.index];
                }
                expected += term;
            }
            CHECK(std::abs(a[i] - expected) < 1e-13);
        }
    }
}

TEST_CASE("errors") {
    const HallBasis basis(3, 4, BasisKind::Lyndon);
    CHECK_THROWS_AS(symbolic_bch_step(basis, derive_bch(4), SymbolicOptions{10}), CapacityError);
    CHECK_THROWS_AS(symbolic_bch_step(basis, derive_bch(3)), std::invalid_argument);
    const AccumulatorProgram program = program_for(2, 2, BasisKind::Lyndon);
    std::vector<double> a(3), wrong_a(4), b(2), wrong_b(3);
    CHECK_THROWS_AS(run_program(program, wrong_a, b), std::invalid_argument);
    CHECK_THROWS_AS(run_program(program, a, wrong_b), std::invalid_argument);
    std::vector<SymbolicCoefficient> bad(3);
    CHECK_THROWS_AS(compile_program(HallBasis(2, 2, BasisKind::Lyndon), bad), std::logic_error);
    CHECK_THROWS_AS(compile_program(HallBasis(2, 3, BasisKind::Lyndon), bad), std::invalid_argument);
}

TEST_CASE("listing") {
    const std::string text = program_for(2, 2, BasisKind::Lyndon).listing();
    CHECK(text.find("t[0] = b[1] * a[0]") != std::string::npos);
    CHECK(text.find("a[2] += 0.5 * t[0]") != std::string::npos);
    CHECK(text.find("a[2] += -0.5 * t[1]") != std::string::npos);
    CHECK(text.find("a[0:2] += b[:]") != std::string::npos);
}
