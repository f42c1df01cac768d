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

#ifndef MQEC_RECORDS_H
#define MQEC_RECORDS_H

#include <cstdint>
#include <string>
#include <vector>

#include "mqec/circuit.h"

namespace mqec {

// One simulated shot: outcome[a] is '0', '1', or 'L' (loss mark) for atom a.
struct ShotRecord {
    uint64_t shot = 0;
    std::string outcome;
    uint64_t leaked_mask = 0;  // diagnostic: atoms outside the qubit subspace at readout (leaked or lost)
    bool operator==(const ShotRecord &o) const {
        return shot == o.shot && outcome == o.outcome && leaked_mask == o.leaked_mask;
    }
};

struct RecordHeader {
    std::string experiment;
    uint64_t circuit_hash = 0;
    uint64_t seed = 0;
    double alpha = 1;
    uint64_t shots = 0;
    std::string noise;  // serialized noise parameters
    std::string roles;  // one letter per atom: d data, p prep flag, l LDU flag, a ancilla, u unused
};

std::string roles_string(const Circuit &c);

// Line-delimited JSON: one header object, then one object per shot.
std::string records_to_jsonl(const RecordHeader &header, const std::vector<ShotRecord> &records);
void records_from_jsonl(const std::string &text, RecordHeader *header, std::vector<ShotRecord> *records);

}  // namespace mqec

#endif
