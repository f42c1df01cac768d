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

#ifndef MQEC_COMPILER_H
#define MQEC_COMPILER_H

#include <string>

#include "mqec/circuit.h"

namespace mqec {

struct CompileOptions {
    int max_pulses = 24;
    // DFS node visits allowed per candidate pulse pattern before it is abandoned.
    long long node_budget = 400000;
};

struct CompileReport {
    int pulses = 0;
    int lower_bound = 0;
    std::string pattern;  // 'h' for a pi/2 pulse, 'f' for a pi pulse
    long long patterns_tried = 0;
};

// Encodes a logical-tier circuit onto atoms according to its EncodingPlan. The
// result is a physical-tier circuit that still uses CX/H/S/X gates.
Circuit encode(const Circuit &logical);

// Rewrites a physical circuit into Prep, CZ, GR, Rz, Move, Measure and
// ClassicalCorrection with the fewest global pulses the stage search finds.
Circuit synthesize_native(const Circuit &physical, const CompileOptions &opts = {}, CompileReport *report = nullptr);

// encode (logical tier only) followed by synthesize_native.
Circuit lower(const Circuit &circuit, const CompileOptions &opts = {}, CompileReport *report = nullptr);

// Noiseless statevector comparison of decoded, flag-accepted physical outcomes
// against the ideal logical distribution. Throws CapacityError above 20 atoms.
bool verify_equivalence(const Circuit &logical, const Circuit &physical, double tol = 1e-9);

}  // namespace mqec

#endif
