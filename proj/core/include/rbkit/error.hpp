// Copyright 2026 The rbkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbkit {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mismatched qubit counts or matrix dimensions.
struct DimensionError : Error {
    using Error::Error;
};

/// Request exceeds a hard capacity limit (qubit count, enumeration size).
struct CapacityError : Error {
    using Error::Error;
};

/// Gate or noise channel not representable by the requested engine.
struct UnsupportedGateError : Error {
    using Error::Error;
};

/// Derived quantity is undefined for the given inputs (saturated decay).
struct ExtractionError : Error {
    using Error::Error;
};

/// Nonlinear fit failed to converge; message carries diagnostics.
struct FitError : Error {
    using Error::Error;
};

/// Malformed input file; carries a 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, size_t line_number = 0)
        : Error(line_number ? "line " + std::to_string(line_number) + ": " + msg : msg),
          line(line_number) {}
    size_t line;
};

}  // namespace rbkit
