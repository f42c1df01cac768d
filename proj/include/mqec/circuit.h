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

#ifndef MQEC_CIRCUIT_H
#define MQEC_CIRCUIT_H

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mqec {

enum class GateKind : uint8_t {
    Prep,
    CZ,
    GR,
    Rz,
    Move,
    Measure,
    CX,
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    SWAP,
    ClassicalCorrection,
};
const char *gate_name(GateKind k);
GateKind gate_from_name(const std::string &name);
// Prep, CZ, GR, Rz, Move, Measure and ClassicalCorrection.
bool is_native(GateKind k);
bool is_single_qubit_unitary(GateKind k);

enum class Tier : uint8_t { Logical, Physical };

enum class Role : uint8_t { Data, PrepFlag, LduFlag, Ancilla, Unused };
const char *role_name(Role r);
Role role_from_name(const std::string &name);

struct Site {
    int row = 0;
    int col = 0;
    bool operator==(const Site &o) const { return row == o.row && col == o.col; }
    bool operator<(const Site &o) const { return row != o.row ? row < o.row : col < o.col; }
};

struct Gate {
    GateKind kind = GateKind::H;
    // Atoms (physical tier) or logical qubits (logical tier). For ClassicalCorrection:
    // targets[0] is the corrected logical bit and targets[1..] are logical-bit parity sources.
    std::vector<int> targets;
    // ClassicalCorrection only: raw atom readouts that also enter the parity.
    std::vector<int> atom_sources;
    double theta = 0;  // GR, Rz
    double phi = 0;    // GR
    int drow = 0;      // Move
    int dcol = 0;      // Move

    bool operator==(const Gate &o) const;
};

struct SiteGrid {
    int rows = 7;
    int cols = 6;
    std::vector<Site> atom_sites;  // initial site of each atom
};

// How each logical bit is read out of the physical measurement record.
enum class SourceKind : uint8_t { Atom, Patch, Cube };
struct LogicalSource {
    SourceKind kind = SourceKind::Atom;
    int atom = -1;                        // Atom
    int patch = -1;                       // Patch: patch id
    int index = 0;                        // Patch: label index; Cube: level-2 logical index
    std::array<int, 4> blocks{-1, -1, -1, -1};  // Cube: patch ids of the four blocks
    bool operator==(const LogicalSource &o) const;
};

struct PatchInfo {
    std::array<int, 4> data{-1, -1, -1, -1};  // atoms in codeword-position order
    int flag = -1;                           // prep flag or fusion ancilla, -1 if none
    bool operator==(const PatchInfo &o) const { return data == o.data && flag == o.flag; }
};

struct Readout {
    std::vector<LogicalSource> logical;
    std::vector<std::vector<int>> words;  // output samples, each a list of logical bits
    std::vector<PatchInfo> patches;
    std::vector<int> prep_flags;                  // atoms that must read 0
    std::vector<std::pair<int, int>> ldu_flags;   // (flag atom, watched data atom)
    std::vector<int> logical_flags;               // logical bits that must decode to 0
    bool operator==(const Readout &o) const;
};

// Logical-tier layout: where logical qubits live and how encoded patches start.
enum class PatchPrep : uint8_t {
    Flagged00,      // flagged GHZ-type |00>_L
    Bell0Plus,      // two Bell pairs, |0+>_L, absorbs a leading logical H on index b
    FusedPlusPlus,  // two Bell pairs fused by an ancilla X-parity check, |++>_L up to a tracked frame
};
const char *prep_name(PatchPrep p);
PatchPrep prep_from_name(const std::string &name);

struct EncodingPlan {
    bool encoded = false;
    // Encoded: logical qubits 2p, 2p+1 are labels a, b of patch p at row patch_rows[p].
    std::vector<int> patch_rows;
    std::vector<PatchPrep> patch_prep;
    // Unencoded: logical qubit q is an atom at sites[q].
    std::vector<Site> sites;
    std::vector<Role> logical_roles;  // data or ancilla per logical qubit
    int grid_rows = 7;
    int grid_cols = 6;
    bool operator==(const EncodingPlan &o) const;
};

struct Circuit {
    std::string name;
    Tier tier = Tier::Physical;
    int num_qubits = 0;  // atoms or logical qubits
    SiteGrid grid;       // physical tier
    std::vector<Role> roles;
    std::vector<Gate> gates;
    std::vector<std::vector<int>> moments;  // gate indices per parallel layer, optional
    Readout readout;
    EncodingPlan plan;  // logical tier

    bool operator==(const Circuit &o) const;
};

// Operands a gate touches for dependency purposes. For ClassicalCorrection in the
// physical tier this is the set of atoms feeding its logical and atom sources.
std::vector<int> gate_operands(const Circuit &c, const Gate &g);
// Atoms whose readout determines a logical bit.
std::vector<int> logical_bit_atoms(const Readout &r, int logical_bit);

std::vector<std::string> validate(const Circuit &c);
// Exact counts keyed by gate_name. Throws UnsupportedError on logical tier or
// non-native kinds.
std::map<std::string, int> count_gates(const Circuit &c);
// Greedy ASAP layering; gates are reordered by moment and moments filled in.
Circuit schedule_moments(const Circuit &c);
// Number of moments containing at least one two-qubit gate (CZ, CX, SWAP).
int two_qubit_depth(const Circuit &c);

std::string circuit_to_text(const Circuit &c);
Circuit circuit_from_text(const std::string &text);
// One moment per line, for human inspection.
std::string timeline_text(const Circuit &c);
// 64-bit FNV-1a of the serialized circuit.
uint64_t circuit_hash(const Circuit &c);

// Logical-tier helpers.
Circuit make_logical(const std::string &name, int num_qubits);
void add_gate(Circuit &c, GateKind kind, std::vector<int> targets);

}  // namespace mqec

#endif
