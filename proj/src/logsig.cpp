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
#include "sigkit/logsig.hpp"

#include <Eigen/Dense>

#include <new>
#include <stdexcept>

#include "sigkit/errors.hpp"

namespace sigkit {
    namespace {
        using Solver = PreparedContext::BlockSolver;

        Solver copy_solver(const AnagramBlock& block) {
            Solver s;
            s.kind = Solver::Kind::Copy;
            const std::uint32_t row = block.lyndon_rows.at(0);
            s.word_rows.push_back(static_cast<std::uint32_t>(block.row_words[row]));
            s.outputs.push_back(static_cast<std::uint32_t>(block.columns[0]));
            s.values.push_back(1.0 / static_cast<double>(block.restricted_entry(0, 0)));
            return s;
        }

        Solver triangular_solver(const AnagramBlock& block) {
            Solver s;
            s.kind = Solver::Kind::Triangular;
            const std::size_t n = block.cols();
            s.row_starts.push_back(0);
            for (std::size_t r = 0; r < n; ++r) {
                s.word_rows.push_back(static_cast<std::uint32_t>(block.row_words[block.lyndon_rows[r]]));
                s.outputs.push_back(static_cast<std::uint32_t>(block.columns[r]));
                if (block.restricted_entry(r, r) != 1) {
                    throw std::logic_error("Lyndon block is not unit lower triangular");
                }
                for (std::size_t c = 0; c < r; ++c) {
                    if (const std::int64_t v = block.restricted_entry(r, c); v != 0) {
                        s.values.push_back(static_cast<double>(v));
                        s.cols.push_back(static_cast<std::uint32_t>(c));
                    }
                }
                s.row_starts.push_back(static_cast<std::uint32_t>(s.values.size()));
            }
            return s;
        }

        Solver pseudoinverse_solver(const AnagramBlock& block) {
            Solver s;
            s.kind = Solver::Kind::Pseudoinverse;
            const auto rows = static_cast<Eigen::Index>(block.rows());
            const auto cols = static_cast<Eigen::Index>(block.cols());
            Eigen::MatrixXd a = Eigen::MatrixXd::Zero(rows, cols);
            for (Eigen::Index c = 0; c < cols; ++c) {
                for (const auto& [r, v] : block.column_entries[static_cast<std::size_t>(c)]) {
                    a(r, c) = static_cast<double>(v);
                }
            }
            Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::VectorXd& sigma = svd.singularValues();
            const double cutoff = sigma.size() > 0 ? 1e-12 * sigma(0) : 0.0;
            Eigen::VectorXd inv(sigma.size());
            for (Eigen::Index i = 0; i < sigma.size(); ++i) {
                inv(i) = sigma(i) > cutoff ? 1.0 / sigma(i) : 0.0;
            }
            const Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();

            for (std::size_t r = 0; r < block.rows(); ++r) {
                s.word_rows.push_back(static_cast<std::uint32_t>(block.row_words[r]));
            }
            for (std::size_t c = 0; c < block.cols(); ++c) {
                s.outputs.push_back(static_cast<std::uint32_t>(block.columns[c]));
            }
            s.values.resize(static_cast<std::size_t>(rows * cols));
            for (Eigen::Index c = 0; c < cols; ++c) {
                for (Eigen::Index r = 0; r < rows; ++r) {
                    s.values[static_cast<std::size_t>(c * rows + r)] = pinv(c, r);
                }
            }
            return s;
        }

        void solve(const Solver& s, std::span<const double> x, std::span<double> out) {
            switch (s.kind) {
                case Solver::Kind::Copy:
                    out[s.outputs[0]] = s.values[0] * x[s.word_rows[0]];
                    return;
                case Solver::Kind::Triangular:
                    for (std::size_t r = 0; r < s.outputs.size(); ++r) {
                        double v = x[s.word_rows[r]];
                        for (std::uint32_t e = s.row_starts[r]; e < s.row_starts[r + 1]; ++e) {
                            v -= s.values[e] * out[s.outputs[s.cols[e]]];
                        }
                        out[s.outputs[r]] = v;
                    }
                    return;
                case Solver::Kind::Pseudoinverse: {
                    const std::size_t rows = s.word_rows.size();
                    for (std::size_t c = 0; c < s.outputs.size(); ++c) {
                        const double* row = s.values.data() + c * rows;
                        double v = 0;
                        for (std::size_t r = 0; r < rows; ++r) {
                            v += row[r] * x[s.word_rows[r]];
                        }
                        out[s.outputs[c]] = v;
                    }
                    return;
                }
            }
        }

        void check_path(const PathPoints& path, const PreparedContext& ctx) {
            if (path.dimension() != ctx.dimension()) {
                throw std::invalid_argument("path dimension does not match the prepared context");
            }
        }
    }  // namespace

    MethodSet MethodSet::parse(std::string_view letters) {
        MethodSet out;
        for (char c : letters) {
            switch (c) {
                case 'x': case 'X': out.expanded = true; break;
                case 's': case 'S': out.projection = true; break;
                case 'o': case 'O': out.direct = true; break;
                default: throw std::invalid_argument("unknown method letter: " + std::string(1, c));
            }
        }
        return out;
    }

    PreparedContext prepare(int d, int m, BasisKind kind, MethodSet methods, const PrepareOptions& options) {
        if (d < 1 || m < 1) {
            throw std::invalid_argument("prepare needs d >= 1 and m >= 1");
        }
        std::size_t length = 0;
        try {
            length = signature_length(d, m);
        } catch (const std::overflow_error&) {
            throw CapacityError("signature length overflows for this (d, m)");
        }
        if (length > options.max_signature_length) {
            throw CapacityError("signature of length " + std::to_string(length) + " exceeds the supported size");
        }

        PreparedContext ctx;
        ctx.d_ = d;
        ctx.m_ = m;
        ctx.kind_ = kind;
        ctx.methods_ = methods;
        try {
            ctx.basis_ = std::make_shared<const HallBasis>(d, m, kind);
            ctx.solvers_.resize(static_cast<std::size_t>(m));
            if (methods.projection) {
                const std::vector<WordPolynomial> expansions = expand_all(*ctx.basis_, m);
                for (int k = 1; k <= m; ++k) {
                    auto& level = ctx.solvers_[static_cast<std::size_t>(k) - 1];
                    for (const AnagramBlock& block : mapping_blocks(*ctx.basis_, k, expansions)) {
                        if (block.cols() == 1) {
                            level.push_back(copy_solver(block));
                        } else if (kind == BasisKind::Lyndon) {
                            level.push_back(triangular_solver(block));
                        } else {
                            level.push_back(pseudoinverse_solver(block));
                        }
                    }
                }
            }
            if (methods.direct) {
                const BchSeries bch = load_or_derive_bch(m, options.bch_cache);
                const std::vector<SymbolicCoefficient> step = symbolic_bch_step(*ctx.basis_, bch, options.symbolic);
                ctx.program_ = std::make_shared<const AccumulatorProgram>(compile_program(*ctx.basis_, step));
            }
        } catch (const std::bad_alloc&) {
            throw CapacityError("out of memory preparing d=" + std::to_string(d) + " m=" + std::to_string(m));
        }
        return ctx;
    }

    TensorSeries logsig_x(const PathPoints& path, const PreparedContext& ctx) {
        if (!ctx.methods().expanded && !ctx.methods().projection) {
            throw std::invalid_argument("context was not prepared for method X or S");
        }
        check_path(path, ctx);
        return tensor_log(path_signature(path, ctx.max_level()));
    }

    LieSeries project(const TensorSeries& x, const PreparedContext& ctx) {
        if (!ctx.methods().projection) {
            throw std::invalid_argument("context was not prepared for method S");
        }
        if (x.dimension() != ctx.dimension() || x.max_level() != ctx.max_level()) {
            throw std::invalid_argument("tensor series shape does not match the prepared context");
        }
        LieSeries out{ctx.shared_basis(), std::vector<double>(ctx.logsig_length(), 0.0)};
        for (int k = 1; k <= ctx.max_level(); ++k) {
            for (const auto& solver : ctx.level_solvers(k)) {
                solve(solver, x.level(k), out.coefficients);
            }
        }
        return out;
    }

    LieSeries logsig_s(const PathPoints& path, const PreparedContext& ctx) {
        if (!ctx.methods().projection) {
            throw std::invalid_argument("context was not prepared for method S");
        }
        return project(logsig_x(path, ctx), ctx);
    }

    LieSeries logsig_o(const PathPoints& path, const PreparedContext& ctx) {
        const AccumulatorProgram* program = ctx.program();
        if (program == nullptr) {
            throw std::invalid_argument("context was not prepared for method O");
        }
        check_path(path, ctx);
        LieSeries out{ctx.shared_basis(), std::vector<double>(ctx.logsig_length(), 0.0)};
        std::vector<double> scratch;
        std::vector<double> b(static_cast<std::size_t>(ctx.dimension()));
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            const auto p = path.point(i);
            const auto q = path.point(i + 1);
            for (std::size_t j = 0; j < b.size(); ++j) {
                b[j] = q[j] - p[j];
            }
            run_program(*program, out.coefficients, b, scratch);
        }
        return out;
    }

    std::vector<std::string> basis_labels(const PreparedContext& ctx) {
        std::vector<std::string> out;
        out.reserve(ctx.logsig_length());
        for (std::size_t i = 0; i < ctx.logsig_length(); ++i) {
            out.push_back(ctx.basis().label(i));
        }
        return out;
    }

}  // namespace sigkit
