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

#ifndef MQEC_BUILDERS_H
#define MQEC_BUILDERS_H

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mqec/circuit.h"

namespace mqec {

enum class Family : uint8_t {
    ShorUnencoded,
    ShorTwoRow,
    ShorThreeRow,
    ShorTwoRowLDU,
    LadderOutsideIn,
    LadderConstantDepth,
    MHCStatePrep,
};
const char *family_name(Family f);
Family family_from_name(const std::string &name);

struct ExperimentSpec {
    Family family = Family::ShorUnencoded;
    int n_logical = 0;         // ladders: logical qubits including ancilla rows
    bool encoded = false;      // ladders and MHC
    std::string initial_bits;  // ladders: one char per logical qubit (ancilla positions ignored); MHC: 4 chars
    uint64_t seed = 0;
};

// Ideal output distribution over readout words, keyed by the word bits.
using Distribution = std::map<std::string, double>;

struct Built {
    Circuit logical;
    Circuit physical;  // pre-compilation physical tier (CX/H allowed)
    Distribution ideal;
};

enum class ShorVariant : uint8_t { Unencoded, TwoRow, ThreeRow, TwoRowLDU };

Built build_shor(ShorVariant variant);
Built build_ladder(const ExperimentSpec &spec);
Built build_mhc_prep(const std::string &initial_bits, bool encoded = true);
Built build(const ExperimentSpec &spec);

// Frame of the watched atom during the unit: X wraps the unit in H on the target. In the qubit
// subspace the unit acts as identity on the target either way.
enum class LduFrame : uint8_t { Z, X };

// Adds one leakage detection unit per target atom, inserted before gate index 'position'.
// Unit: flag prepared in |1>, CX(target->flag), anti-controlled CX(target->flag).
Circuit insert_ldus(const Circuit &circuit, const std::vector<int> &targets, size_t position,
                    LduFrame frame = LduFrame::Z);

// Ladder row structure: row r holds logical qubits 2r and 2r+1.
int ladder_rows(int n_logical);
bool ladder_row_is_ancilla(int row, int rows);
std::vector<int> ladder_data_qubits(int n_logical, bool constant_depth);

// Classical outside-in reference over the data rows: returns data bits in qubit order.
std::string outside_in_reference(const std::string &data_bits);

// Reproducible random ladder inputs (ancilla positions set to '0').
std::vector<std::string> random_ladder_inputs(int n_logical, int count, uint64_t seed);

// Ideal distribution of a logical-tier circuit over its words (statevector, with corrections).
Distribution logical_distribution(const Circuit &logical);

}  // namespace mqec

#endif
