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
#include "sigkit/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sigkit/errors.hpp"

namespace sigkit {
    namespace {
        std::string_view trim(std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
                s.remove_prefix(1);
            }
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
                s.remove_suffix(1);
            }
            return s;
        }

        double parse_cell(std::string_view cell, std::size_t line) {
            cell = trim(cell);
            if (!cell.empty() && cell.front() == '+') {
                cell.remove_prefix(1);
            }
            double v = 0;
            const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
                throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(cell) + "'");
            }
            if (!std::isfinite(v)) {
                throw ParseError("line " + std::to_string(line) + ": non-finite value");
            }
            return v;
        }
    }  // namespace

    PathPoints read_path_csv(std::istream& in, bool skip_header) {
        std::vector<double> coords;
        std::size_t columns = 0;
        std::size_t line_no = 0;
        bool header_pending = skip_header;
        std::string line;
        while (std::getline(in, line)) {
            ++line_no;
            const std::string_view row = trim(line);
            if (row.empty()) {
                continue;
            }
            if (header_pending) {
                header_pending = false;
                continue;
            }
            std::size_t count = 0;
            std::size_t start = 0;
            while (true) {
                const std::size_t comma = row.find(',', start);
                const std::string_view cell =
                    row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
                coords.push_back(parse_cell(cell, line_no));
                ++count;
                if (comma == std::string_view::npos) {
                    break;
                }
                start = comma + 1;
            }
            if (columns == 0) {
                columns = count;
            } else if (count != columns) {
                throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) +
                                 " columns, found " + std::to_string(count));
            }
        }
        if (in.bad()) {
            throw ParseError("read error");
        }
        if (columns == 0) {
            throw ParseError("no data rows");
        }
        return PathPoints(static_cast<int>(columns), std::move(coords));
    }

    std::string format_number(double v) {
        char buf[64];
        std::to_chars_result r = std::to_chars(buf, buf + sizeof buf, v);
        // Plain shortest form writes large integral values out in full, past 17 significant digits.
        const std::string_view plain(buf, static_cast<std::size_t>(r.ptr - buf));
        if (r.ec == std::errc() && plain.find_first_of(".e") == std::string_view::npos &&
            plain.size() - (v < 0 ? 1 : 0) > 17) {
            r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
        }
        if (r.ec != std::errc()) {
            throw std::runtime_error("number formatting failed");
        }
        return std::string(buf, r.ptr);
    }

    std::string format_csv_row(std::span<const double> values) {
        std::string out;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += format_number(values[i]);
        }
        return out;
    }

    std::string format_json_array(std::span<const double> values) {
        return nlohmann::json(std::vector<double>(values.begin(), values.end())).dump();
    }

}  // namespace sigkit
