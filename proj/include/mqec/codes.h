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

#ifndef MQEC_CODES_H
#define MQEC_CODES_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqec/pauli.h"

namespace mqec {

// Stabilizer code with logical operators. label_x / label_z fix the computational
// labeling of codewords used by codeword_table and the decoders; they default to
// the logical operators but may be a different symplectic basis of the same
// logical space (the [[4,2,2]] codeword table uses its own labeling).
struct StabilizerCode {
    std::string name;
    size_t n = 0;
    size_t k = 0;
    std::optional<int> d;
    std::vector<PauliString> stabilizers;
    std::vector<PauliString> logical_x;
    std::vector<PauliString> logical_z;
    std::vector<PauliString> label_x;
    std::vector<PauliString> label_z;

    // Empty iff every structural invariant holds.
    std::vector<std::string> problems() const;
    bool is_css() const;
    std::vector<PauliString> x_stabilizers() const;
    std::vector<PauliString> z_stabilizers() const;
    // GF(2) rank of the stabilizer generators.
    size_t stabilizer_rank() const;
};

// k-bit label (character '0'/'1' per logical, label index 0 first) -> n-bit supports.
using CodewordTable = std::map<std::string, std::vector<std::string>>;

StabilizerCode c4_code();

// Concatenates: each qubit of outer becomes one block of inner, and outer
// operators are applied to inner logical index j for every j. Logical (j, i) gets
// index j * outer.k + i. Stabilizers are ordered X-type first, then Z-type.
StabilizerCode concatenate(const StabilizerCode &outer, const StabilizerCode &inner);
// Many-hypercube step: concatenate(code, code). Requires k = 2.
StabilizerCode concatenate_self(const StabilizerCode &code);

// Minimum weight of a Pauli that commutes with all stabilizers and anticommutes
// with some logical operator, searching weights 1..max_weight. nullopt means
// "> max_weight". Throws CapacityError when n exceeds max_qubits.
std::optional<int> verify_distance(const StabilizerCode &code, int max_weight, size_t max_qubits = 24);
// Same search with a plain loop; reference for the OpenMP version.
std::optional<int> verify_distance_serial(const StabilizerCode &code, int max_weight, size_t max_qubits = 24);

struct CssDistances {
    std::optional<int> x_distance;  // lightest undetected X-type logical
    std::optional<int> z_distance;  // lightest undetected Z-type logical
};
CssDistances verify_css_distances(const StabilizerCode &code, int max_weight, size_t max_qubits = 24);

// Computational-basis supports of each labeled codeword. CSS codes only.
CodewordTable codeword_table(const StabilizerCode &code);

// Bit q of the mask is qubit q. Parity of mask & support.
inline int mask_parity(uint64_t a, uint64_t b) {
    return __builtin_popcountll(a & b) & 1;
}
uint64_t x_mask(const PauliString &p);
uint64_t z_mask(const PauliString &p);

// Text format: header "code <name> n=<n> k=<k> d=<d|?>", then lines
// "S <pauli>", "LX <pauli>", "LZ <pauli>", "RX <pauli>", "RZ <pauli>".
std::string code_to_text(const StabilizerCode &code);
StabilizerCode code_from_text(const std::string &text);

}  // namespace mqec

#endif
