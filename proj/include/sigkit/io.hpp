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
 // Path tables in and CSV / JSON rows out.

#ifndef SIGKIT_IO_HPP
#define SIGKIT_IO_HPP

#include <istream>
#include <span>
#include <string>

#include "sigkit/tensor_algebra.hpp"

namespace sigkit {

    /* Reads one point per line, coordinates separated by commas. Blank lines are skipped; with
     * skip_header the first non-blank line is dropped unread. Throws ParseError on ragged rows,
     * non-numeric or non-finite cells, or when no data row remains.
     */
    PathPoints read_path_csv(std::istream& in, bool skip_header = false);

    // Shortest decimal that reads back to the same double.
    std::string format_number(double v);
    // "1,0.5,-2" with format_number.
    std::string format_csv_row(std::span<const double> values);
    // "[1,0.5,-2]"; NaN and infinities are rendered as null.
    std::string format_json_array(std::span<const double> values);

}  // namespace sigkit

#endif  // SIGKIT_IO_HPP
