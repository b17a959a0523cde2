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
 // prepare / logsig: one-off preparation of bases, projection data and accumulation programs, then
 // log signature computation by the expanded (X), projection (S) or direct (O) method.

#ifndef SIGKIT_LOGSIG_HPP
#define SIGKIT_LOGSIG_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigkit/accumulator.hpp"
#include "sigkit/lie_basis.hpp"
#include "sigkit/tensor_algebra.hpp"

namespace sigkit {

    struct MethodSet {
        bool expanded = false;    // X
        bool projection = false;  // S
        bool direct = false;      // O

        // Letters from "xso" in either case, e.g. "SO". Throws std::invalid_argument on anything else.
        static MethodSet parse(std::string_view letters);
        static MethodSet all() { return {true, true, true}; }
    };

    struct PrepareOptions {
        // Where derived BCH coefficients are cached; nullopt derives in memory every time.
        std::optional<std::filesystem::path> bch_cache = default_bch_cache_path();
        SymbolicOptions symbolic;
        // Largest signature (levels 1..m, in doubles) prepare will plan for.
        std::size_t max_signature_length = std::size_t{1} << 28;
    };

    // Coordinates of a log signature over a basis, level-major in basis order.
    struct LieSeries {
        std::shared_ptr<const HallBasis> basis;
        std::vector<double> coefficients;
    };

    class PreparedContext;

    /* Builds everything the requested methods need: the basis always, projection solvers for S, the
     * accumulation program for O. Throws std::invalid_argument for d < 1 or m < 1 and CapacityError
     * when the configuration is too large.
     */
    PreparedContext prepare(int d, int m, BasisKind kind = BasisKind::Lyndon, MethodSet methods = {false, true, false},
                            const PrepareOptions& options = {});

    /* Immutable once prepared; the logsig functions may be called concurrently against one context. */
    class PreparedContext {
    public:
        int dimension() const { return d_; }
        int max_level() const { return m_; }
        BasisKind kind() const { return kind_; }
        const MethodSet& methods() const { return methods_; }
        const HallBasis& basis() const { return *basis_; }
        const std::shared_ptr<const HallBasis>& shared_basis() const { return basis_; }
        // Null unless prepared with O.
        const AccumulatorProgram* program() const { return program_.get(); }

        std::size_t logsig_length() const { return basis_->size(); }
        std::size_t sig_length() const { return signature_length(d_, m_); }

        // One solved block of the projection; exposed for tests and diagnostics.
        struct BlockSolver {
            enum class Kind : std::uint8_t { Copy, Triangular, Pseudoinverse };
            Kind kind = Kind::Copy;
            // Offsets within the level of the tensor entries read.
            std::vector<std::uint32_t> word_rows;
            // Basis positions written.
            std::vector<std::uint32_t> outputs;
            // Copy: one scale per output. Triangular: strictly lower entries, CSR by row.
            // Pseudoinverse: outputs x word_rows, row-major.
            std::vector<double> values;
            std::vector<std::uint32_t> row_starts;
            std::vector<std::uint32_t> cols;
        };
        const std::vector<BlockSolver>& level_solvers(int level) const {
            return solvers_[static_cast<std::size_t>(level) - 1];
        }

    private:
        friend PreparedContext prepare(int, int, BasisKind, MethodSet, const PrepareOptions&);
        PreparedContext() = default;

        int d_ = 0;
        int m_ = 0;
        BasisKind kind_ = BasisKind::Lyndon;
        MethodSet methods_;
        std::shared_ptr<const HallBasis> basis_;
        std::vector<std::vector<BlockSolver>> solvers_;
        std::shared_ptr<const AccumulatorProgram> program_;
    };

    // log of the signature, in tensor space. Requires X or S.
    TensorSeries logsig_x(const PathPoints& path, const PreparedContext& ctx);
    // Basis coordinates of a Lie element given in tensor space. Requires S.
    LieSeries project(const TensorSeries& x, const PreparedContext& ctx);
    // project(logsig_x(path)). Requires S.
    LieSeries logsig_s(const PathPoints& path, const PreparedContext& ctx);
    // Folds the accumulation program over the displacements. Requires O.
    LieSeries logsig_o(const PathPoints& path, const PreparedContext& ctx);

    std::vector<std::string> basis_labels(const PreparedContext& ctx);

}  // namespace sigkit

#endif  // SIGKIT_LOGSIG_HPP
