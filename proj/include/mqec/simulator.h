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

#ifndef MQEC_SIMULATOR_H
#define MQEC_SIMULATOR_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mqec/circuit.h"
#include "mqec/noise.h"
#include "mqec/records.h"

namespace mqec {

enum class Occupancy : uint8_t { InSubspace, LeakedA, LeakedB, Lost };

enum class FaultKind : uint8_t { X, Y, Z, LeakA, LeakB, Loss };

// Deterministic (or probabilistic) fault applied right after gate 'gate' of the input circuit;
// gate = -1 applies it before the first gate.
struct ForcedFault {
    int gate = -1;
    int atom = 0;
    FaultKind kind = FaultKind::X;
    double probability = 1;
};

struct SimOptions {
    bool parallel = true;
    int threads = 0;  // 0 keeps the OpenMP default
    std::vector<ForcedFault> faults;
};

// Per-shot PRNG seed derived from the run seed and shot index.
uint64_t shot_seed(uint64_t seed, uint64_t shot);

// Shot simulation. Records come back ordered by shot index and are identical for any thread count.
std::vector<ShotRecord> run_shots(const Circuit &circuit, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                                  const SimOptions &options = {});
// Serial reference path with the same per-shot streams.
std::vector<ShotRecord> run_shots_serial(const Circuit &circuit, const NoiseModel &noise, uint64_t shots,
                                         uint64_t seed, const SimOptions &options = {});

// Exact noiseless outcome distribution by branching the tableau on random measurements.
std::map<std::string, double> tableau_distribution(const Circuit &circuit);

}  // namespace mqec

#endif
