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
 // sigkit command line: sig, logsig, basis, bch and bench.
 // Exit status is 0 on success, 2 for usage errors and 1 for bad data or failed computations.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sigkit/bch.hpp"
#include "sigkit/bench.hpp"
#include "sigkit/errors.hpp"
#include "sigkit/io.hpp"
#include "sigkit/logsig.hpp"

namespace {
    constexpr int kExitData = 1;
    constexpr int kExitUsage = 2;

    struct DataError : std::runtime_error {
        using std::runtime_error::runtime_error;
    };

    sigkit::PathPoints load_path(const std::string& file, bool header) {
        if (file == "-") {
            return sigkit::read_path_csv(std::cin, header);
        }
        std::ifstream in(file);
        if (!in) {
            throw DataError("cannot open " + file);
        }
        return sigkit::read_path_csv(in, header);
    }

    void print_values(std::span<const double> values, bool json) {
        std::cout << (json ? sigkit::format_json_array(values) : sigkit::format_csv_row(values)) << '\n';
    }

    struct SigArgs {
        std::string file;
        int m = 0;
        bool header = false;
        bool json = false;
    };

    struct LogsigArgs {
        SigArgs io;
        std::string basis = "lyndon";
        std::string method = "s";
    };

    struct BasisArgs {
        int d = 0;
        int m = 0;
        std::string basis = "lyndon";
    };

    struct BchArgs {
        int level = 0;
        std::string cache;
        bool check = false;
    };

    struct BenchArgs {
        sigkit::BenchConfig config;
        std::string methods = "sig";
        std::string basis = "lyndon";
    };

    int run_sig(const SigArgs& args) {
        const sigkit::PathPoints path = load_path(args.file, args.header);
        print_values(sigkit::path_signature(path, args.m).without_level_zero(), args.json);
        return 0;
    }

    int run_logsig(const LogsigArgs& args) {
        const sigkit::PathPoints path = load_path(args.io.file, args.io.header);
        const sigkit::MethodSet methods = sigkit::MethodSet::parse(args.method);
        const sigkit::PreparedContext ctx =
            sigkit::prepare(path.dimension(), args.io.m, sigkit::parse_basis_kind(args.basis), methods);
        if (methods.direct) {
            print_values(sigkit::logsig_o(path, ctx).coefficients, args.io.json);
        } else if (methods.projection) {
            print_values(sigkit::logsig_s(path, ctx).coefficients, args.io.json);
        } else {
            print_values(sigkit::logsig_x(path, ctx).without_level_zero(), args.io.json);
        }
        return 0;
    }

    int run_basis(const BasisArgs& args) {
        const sigkit::HallBasis basis(args.d, args.m, sigkit::parse_basis_kind(args.basis));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::cout << basis.label(i) << '\n';
        }
        return 0;
    }

    int run_bch(const BchArgs& args) {
        std::optional<std::filesystem::path> path;
        if (!args.cache.empty()) {
            path = args.cache;
        } else {
            path = sigkit::default_bch_cache_path();
        }
        if (args.check) {
            if (!path) {
                throw DataError("no cache location");
            }
            std::ifstream in(*path);
            if (!in) {
                throw DataError("cannot open " + path->string());
            }
            const sigkit::BchSeries series = sigkit::read_bch_cache(in);
            if (series.max_level < args.level) {
                throw DataError("cache holds level " + std::to_string(series.max_level) + " only");
            }
            std::cerr << path->string() << ": valid, maxlevel=" << series.max_level << '\n';
            return 0;
        }
        sigkit::write_bch_cache(std::cout, sigkit::load_or_derive_bch(args.level, path));
        return 0;
    }

    int run_bench(BenchArgs& args) {
        args.config.methods = sigkit::parse_bench_methods(args.methods);
        args.config.basis = sigkit::parse_basis_kind(args.basis);
        const sigkit::BenchReport report = sigkit::run_bench(args.config);
        sigkit::write_bench_csv(std::cout, report.rows);
        for (const sigkit::BenchFailure& f : report.failures) {
            std::cerr << "sigkit bench: method " << f.method << " failed: " << f.message << '\n';
        }
        return report.failures.empty() ? 0 : kExitData;
    }
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Signatures and log signatures of piecewise-linear paths"};
    app.require_subcommand(1);
    const auto basis_names = CLI::IsMember({"lyndon", "hall"}, CLI::ignore_case);

    SigArgs sig;
    auto* sig_cmd = app.add_subcommand("sig", "Signature of the path in a CSV file, levels 1..m, one row");
    sig_cmd->add_option("file", sig.file, "CSV of points, one per row ('-' for stdin)")->required();
    sig_cmd->add_option("-m,--level", sig.m, "Truncation level")->required()->check(CLI::Range(1, 64));
    sig_cmd->add_flag("--header", sig.header, "Skip the first row");
    sig_cmd->add_flag("--json", sig.json, "Print a JSON array instead of CSV");

    LogsigArgs logsig;
    auto* logsig_cmd = app.add_subcommand("logsig", "Log signature of the path in a CSV file");
    logsig_cmd->add_option("file", logsig.io.file, "CSV of points, one per row ('-' for stdin)")->required();
    logsig_cmd->add_option("-m,--level", logsig.io.m, "Truncation level")->required()->check(CLI::Range(1, 64));
    logsig_cmd->add_option("--basis", logsig.basis, "lyndon or hall")->check(basis_names)->capture_default_str();
    logsig_cmd->add_option("--method", logsig.method, "x (tensor space), s (projection) or o (direct)")
        ->check(CLI::IsMember({"x", "s", "o"}, CLI::ignore_case))
        ->capture_default_str();
    logsig_cmd->add_flag("--header", logsig.io.header, "Skip the first row");
    logsig_cmd->add_flag("--json", logsig.io.json, "Print a JSON array instead of CSV");

    BasisArgs basis;
    auto* basis_cmd = app.add_subcommand("basis", "List the basis elements in coefficient order");
    basis_cmd->add_option("-d,--dim", basis.d, "Path dimension")->required()->check(CLI::Range(1, 1 << 20));
    basis_cmd->add_option("-m,--level", basis.m, "Truncation level")->required()->check(CLI::Range(1, 64));
    basis_cmd->add_option("--basis", basis.basis, "lyndon or hall")->check(basis_names)->capture_default_str();

    BchArgs bch;
    auto* bch_cmd = app.add_subcommand("bch", "Derive or load BCH coefficients, refresh the cache, print them");
    bch_cmd->add_option("--level", bch.level, "Highest level")->required()->check(CLI::Range(1, sigkit::kMaxBchLevel));
    bch_cmd->add_option("--cache", bch.cache, "Cache file (default: $SIGKIT_BCH_CACHE or the user cache dir)");
    bch_cmd->add_flag("--check", bch.check, "Only validate the cache file");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time methods on seeded random paths, CSV to stdout");
    bench_cmd->add_option("-d,--dim", bench.config.d, "Path dimension")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("-m,--level", bench.config.m, "Truncation level")->required()->check(CLI::Range(1, 64));
    bench_cmd->add_option("--paths", bench.config.num_paths, "Number of paths")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--steps", bench.config.steps, "Segments per path")->required()->check(CLI::PositiveNumber);
    bench_cmd->add_option("--methods", bench.methods, "Comma list of sig, x, s, o")->required();
    bench_cmd->add_option("--seed", bench.config.seed, "Workload seed")->capture_default_str();
    bench_cmd->add_option("--basis", bench.basis, "lyndon or hall")->check(basis_names)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sig_cmd) {
            return run_sig(sig);
        }
        if (*logsig_cmd) {
            return run_logsig(logsig);
        }
        if (*basis_cmd) {
            return run_basis(basis);
        }
        if (*bch_cmd) {
            return run_bch(bch);
        }
        if (*bench_cmd) {
            try {
                bench.config.methods = sigkit::parse_bench_methods(bench.methods);
            } catch (const std::invalid_argument& e) {
                std::cerr << "sigkit: " << e.what() << '\n';
                return kExitUsage;
            }
            return run_bench(bench);
        }
    } catch (const std::exception& e) {
        std::cerr << "sigkit: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}
