/*
 * Copyright (c) 2026, riskmeans contributors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace riskmeans {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
    Io = 1,        // file missing or unreadable
    Parse,         // malformed config / schema / model document
    Schema,        // header or column layout does not match the schema
    Data,          // bad cell contents: non-binary label, ragged row, all-missing column
    Argument,      // precondition on a numeric argument violated
    State,         // operation on an unfitted object
    Numeric,       // non-finite input
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
    if (!cond) fail(code, what);
}

}  // namespace riskmeans
