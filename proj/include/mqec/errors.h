// Copyright 2026 The mqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MQEC_ERRORS_H
#define MQEC_ERRORS_H

#include <stdexcept>
#include <string>

namespace mqec {

// Malformed configuration or input values.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a documented size cap (oracle qubits, distance search, tableau width).
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally invalid object (non-commuting code, inconsistent layout).
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not supported for the given input (non-CSS table, non-Clifford gate, logical-tier count).
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two patches must interact but no legal placement or move plan exists.
struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UndefinedMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mqec

#endif
