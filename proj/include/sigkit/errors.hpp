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
#ifndef SIGKIT_ERRORS_HPP
#define SIGKIT_ERRORS_HPP

#include <stdexcept>

// Precondition violations are reported with std::invalid_argument. The types
// below cover failures that are not the caller's fault in that sense.
namespace sigkit {

    // The requested (dimension, level) needs more memory or work than the
    // library is prepared to spend.
    class CapacityError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    // Malformed external data: path files, BCH cache files.
    class ParseError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

}  // namespace sigkit

#endif  // SIGKIT_ERRORS_HPP
