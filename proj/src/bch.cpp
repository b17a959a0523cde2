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
#include "sigkit/bch.hpp"

#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "sigkit/errors.hpp"
#include "sigkit/tensor_algebra.hpp"

namespace sigkit {
    namespace {
        using RationalSeries = BasicTensorSeries<mpq_class>;

        std::string ab_foliage(const Word& w) {
            std::string out;
            for (Letter l : w) {
                out += static_cast<char>('a' + (l - 1));
            }
            return out;
        }

        struct KnownValue {
            const char* foliage;
            int numerator;
            int denominator;
        };

        // Low-level coefficients every valid series must reproduce.
        constexpr KnownValue kKnownValues[] = {
            {"a", 1, 1}, {"b", 1, 1}, {"ab", 1, 2}, {"aab", 1, 12}, {"abb", 1, 12}, {"aabb", 1, 24},
        };

        void check_known_values(const BchSeries& series) {
            for (const KnownValue& known : kKnownValues) {
                if (static_cast<int>(std::char_traits<char>::length(known.foliage)) > series.max_level) {
                    continue;
                }
                if (series.coefficient(known.foliage) != mpq_class(known.numerator, known.denominator)) {
                    throw ParseError(std::string("BCH coefficient of ") + known.foliage + " is wrong");
                }
            }
        }

        mpz_class parse_integer(const std::string& text, const std::string& what) {
            if (text.empty()) {
                throw ParseError("empty " + what);
            }
            std::size_t start = text[0] == '-' ? 1 : 0;
            if (start == text.size()) {
                throw ParseError("malformed " + what + ": " + text);
            }
            for (std::size_t i = start; i < text.size(); ++i) {
                if (text[i] < '0' || text[i] > '9') {
                    throw ParseError("malformed " + what + ": " + text);
                }
            }
            return mpz_class(text, 10);
        }
    }  // namespace

    mpq_class BchSeries::coefficient(const std::string& foliage) const {
        for (std::size_t i = 0; i < basis->size(); ++i) {
            if (ab_foliage((*basis)[i].foliage) == foliage) {
                return coefficients[i];
            }
        }
        return 0;
    }

    BchSeries derive_bch(int level) {
        if (level < 1) {
            throw std::invalid_argument("BCH level must be at least 1");
        }
        if (level > kMaxBchLevel) {
            throw CapacityError("BCH derivation is limited to level " + std::to_string(kMaxBchLevel));
        }
        auto basis = std::make_shared<const HallBasis>(2, level, BasisKind::Lyndon);
        const std::vector<mpq_class> a{1, 0};
        const std::vector<mpq_class> b{0, 1};
        const RationalSeries product = concat_product(segment_signature<mpq_class>(a, level),
                                                      segment_signature<mpq_class>(b, level));
        const RationalSeries log = tensor_log(product);

        BchSeries out;
        out.max_level = level;
        out.basis = basis;
        out.coefficients.assign(basis->size(), 0);
        ExactProjector projector(*basis);
        for (int k = 1; k <= level; ++k) {
            RationalWordPolynomial p;
            p.dimension = 2;
            p.length = k;
            auto values = log.level(k);
            for (std::size_t w = 0; w < values.size(); ++w) {
                if (sgn(values[w]) != 0) {
                    p.terms.emplace_back(static_cast<std::uint64_t>(w), values[w]);
                }
            }
            for (const auto& [position, c] : projector.project(p).terms) {
                out.coefficients[position] = c;
            }
        }
        return out;
    }

    BchSeries truncate_bch(const BchSeries& series, int level) {
        if (level < 1 || level > series.max_level) {
            throw std::invalid_argument("cannot truncate a BCH series to that level");
        }
        if (level == series.max_level) {
            return series;
        }
        BchSeries out;
        out.max_level = level;
        out.basis = std::make_shared<const HallBasis>(2, level, BasisKind::Lyndon);
        // The Lyndon basis on two letters is a prefix of the deeper one.
        out.coefficients.assign(series.coefficients.begin(),
                                series.coefficients.begin() + static_cast<std::ptrdiff_t>(out.basis->size()));
        return out;
    }

    void write_bch_cache(std::ostream& out, const BchSeries& series) {
        out << "BCH-LYNDON v1 maxlevel=" << series.max_level << '\n';
        for (std::size_t i = 0; i < series.basis->size(); ++i) {
            const BasisElt& e = (*series.basis)[i];
            const mpq_class& c = series.coefficients[i];
            out << e.level << ' ' << ab_foliage(e.foliage) << ' ' << c.get_num().get_str() << '/'
                << c.get_den().get_str() << '\n';
        }
    }

    std::string format_bch_cache(const BchSeries& series) {
        std::ostringstream out;
        write_bch_cache(out, series);
        return out.str();
    }

    BchSeries read_bch_cache(std::istream& in) {
        std::string line;
        if (!std::getline(in, line)) {
            throw ParseError("BCH cache is empty");
        }
        const std::string prefix = "BCH-LYNDON v1 maxlevel=";
        if (line.rfind(prefix, 0) != 0) {
            throw ParseError("BCH cache header not recognised");
        }
        const mpz_class parsed_level = parse_integer(line.substr(prefix.size()), "maxlevel");
        if (parsed_level < 1 || parsed_level > kMaxBchLevel) {
            throw ParseError("BCH cache maxlevel out of range");
        }
        const int level = static_cast<int>(parsed_level.get_si());

        BchSeries out;
        out.max_level = level;
        out.basis = std::make_shared<const HallBasis>(2, level, BasisKind::Lyndon);
        out.coefficients.reserve(out.basis->size());
        for (std::size_t i = 0; i < out.basis->size(); ++i) {
            if (!std::getline(in, line)) {
                throw ParseError("BCH cache is truncated");
            }
            std::istringstream fields(line);
            std::string level_text, foliage, fraction, extra;
            if (!(fields >> level_text >> foliage >> fraction) || (fields >> extra)) {
                throw ParseError("malformed BCH cache line: " + line);
            }
            const BasisElt& e = (*out.basis)[i];
            if (parse_integer(level_text, "level") != e.level || foliage != ab_foliage(e.foliage)) {
                throw ParseError("BCH cache element out of order: " + line);
            }
            const auto slash = fraction.find('/');
            if (slash == std::string::npos) {
                throw ParseError("BCH coefficient is not a fraction: " + line);
            }
            const mpz_class numerator = parse_integer(fraction.substr(0, slash), "numerator");
            const mpz_class denominator = parse_integer(fraction.substr(slash + 1), "denominator");
            if (denominator <= 0) {
                throw ParseError("BCH coefficient denominator must be positive: " + line);
            }
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
            if (g != 1) {
                throw ParseError("BCH coefficient is not in lowest terms: " + line);
            }
            out.coefficients.emplace_back(numerator, denominator);
        }
        while (std::getline(in, line)) {
            if (!line.empty()) {
                throw ParseError("trailing data in BCH cache");
            }
        }
        check_known_values(out);
        return out;
    }

    std::optional<std::filesystem::path> default_bch_cache_path() {
        if (const char* env = std::getenv("SIGKIT_BCH_CACHE"); env != nullptr && *env != '\0') {
            return std::filesystem::path(env);
        }
        const std::filesystem::path name = "sigkit/bch_lyndon_v1.txt";
        if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
            return std::filesystem::path(xdg) / name;
        }
        if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
            return std::filesystem::path(home) / ".cache" / name;
        }
        return std::nullopt;
    }

    BchSeries load_or_derive_bch(int level, const std::optional<std::filesystem::path>& path) {
        if (level < 1) {
            throw std::invalid_argument("BCH level must be at least 1");
        }
        if (!path) {
            return derive_bch(level);
        }
        std::error_code ec;
        if (std::filesystem::exists(*path, ec)) {
            std::ifstream in(*path);
            try {
                BchSeries cached = read_bch_cache(in);
                if (cached.max_level >= level) {
                    return truncate_bch(cached, level);
                }
            } catch (const ParseError&) {
                // unusable; rederive below
            }
        }
        BchSeries series = derive_bch(level);
        try {
            if (path->has_parent_path()) {
                std::filesystem::create_directories(path->parent_path(), ec);
            }
            std::random_device rd;
            std::filesystem::path temp = *path;
            temp += ".tmp" + std::to_string(rd());
            {
                std::ofstream out(temp);
                write_bch_cache(out, series);
                if (!out) {
                    throw std::runtime_error("write failed");
                }
            }
            std::filesystem::rename(temp, *path, ec);
            if (ec) {
                std::filesystem::remove(temp, ec);
            }
        } catch (const std::exception&) {
            // the cache is an optimisation only
        }
        return series;
    }

}  // namespace sigkit
