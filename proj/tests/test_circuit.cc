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


#include <gtest/gtest.h>

#include "mqec/builders.h"
#include "mqec/circuit.h"
#include "mqec/compiler.h"
#include "mqec/errors.h"

using namespace mqec;

namespace {

Circuit two_atoms() {
    Circuit c;
    c.name = "pair";
    c.tier = Tier::Physical;
    c.num_qubits = 2;
    c.grid.rows = 2;
    c.grid.cols = 3;
    c.grid.atom_sites = {{0, 0}, {0, 1}};
    c.roles = {Role::Data, Role::Data};
    return c;
}

Gate gate(GateKind k, std::vector<int> t) {
    Gate g;
    g.kind = k;
    g.targets = std::move(t);
    return g;
}

bool has(const std::vector<std::string> &v, const std::string &needle) {
    for (const auto &s : v) {
        if (s.find(needle) != std::string::npos) {
            return true;
        }
    }
    return false;
}

Built ladder(Family f, int n, bool enc, const std::string &bits = "") {
    ExperimentSpec s;
    s.family = f;
    s.n_logical = n;
    s.encoded = enc;
    s.initial_bits = bits.empty() ? std::string(n, '0') : bits;
    return build(s);
}

}  // namespace

TEST(Validate, EmptyCircuitIsValid) {
    Circuit c;
    c.num_qubits = 0;
    c.grid.atom_sites.clear();
    EXPECT_TRUE(validate(c).empty());
    EXPECT_TRUE(validate(two_atoms()).empty());
}

TEST(Validate, RepeatedOperand) {
    Circuit c = two_atoms();
    c.gates.push_back(gate(GateKind::CZ, {0, 0}));
    EXPECT_TRUE(has(validate(c), "arity"));
}

TEST(Validate, WrongArity) {
    Circuit c = two_atoms();
    c.gates.push_back(gate(GateKind::CZ, {0}));
    EXPECT_TRUE(has(validate(c), "arity"));
}

TEST(Validate, MoveCollision) {
    Circuit c = two_atoms();
    Gate m = gate(GateKind::Move, {0});
    m.dcol = 1;
    c.gates.push_back(m);
    EXPECT_TRUE(has(validate(c), "collision"));
    // Moving both atoms as one block is legal.
    Circuit ok = two_atoms();
    Gate both = gate(GateKind::Move, {0, 1});
    both.dcol = 1;
    ok.gates.push_back(both);
    EXPECT_TRUE(validate(ok).empty());
}

TEST(Validate, MoveOutsideGrid) {
    Circuit c = two_atoms();
    Gate m = gate(GateKind::Move, {0, 1});
    m.drow = 5;
    c.gates.push_back(m);
    EXPECT_TRUE(has(validate(c), "outside"));
}

TEST(Validate, UseAfterMeasurement) {
    Circuit c = two_atoms();
    c.gates.push_back(gate(GateKind::Measure, {0}));
    c.gates.push_back(gate(GateKind::CZ, {0, 1}));
    EXPECT_FALSE(validate(c).empty());
}

TEST(Validate, CorrectionBeforeSourceMeasured) {
    Circuit c = make_logical("cc", 2);
    c.plan.sites = {{0, 0}, {0, 1}};
    add_gate(c, GateKind::ClassicalCorrection, {1, 0});
    add_gate(c, GateKind::Measure, {0});
    add_gate(c, GateKind::Measure, {1});
    EXPECT_TRUE(has(validate(c), "classical correction"));
}

TEST(Validate, GrAndMoveInOneMomentRejected) {
    Circuit c = two_atoms();
    Gate g = gate(GateKind::GR, {});
    g.theta = 1.5707963267948966;
    c.gates.push_back(g);
    Gate m = gate(GateKind::Move, {0, 1});
    m.dcol = 1;
    c.gates.push_back(m);
    c.moments = {{0, 1}};
    EXPECT_TRUE(has(validate(c), "GR and Move"));
}

TEST(Validate, EveryBuilderIsClean) {
    for (auto v : {ShorVariant::Unencoded, ShorVariant::TwoRow, ShorVariant::ThreeRow, ShorVariant::TwoRowLDU}) {
        Built b = build_shor(v);
        EXPECT_TRUE(validate(b.logical).empty());
        EXPECT_TRUE(validate(b.physical).empty());
    }
    for (int n : {4, 6, 8, 12}) {
        for (bool enc : {false, true}) {
            Built b = ladder(Family::LadderConstantDepth, n, enc);
            EXPECT_TRUE(validate(b.logical).empty()) << n;
            EXPECT_TRUE(validate(b.physical).empty()) << n;
        }
    }
    for (bool enc : {false, true}) {
        Built b = build_mhc_prep("1110", enc);
        EXPECT_TRUE(validate(b.physical).empty());
    }
}

TEST(CountGates, RejectsLogicalTier) {
    Built b = build_shor(ShorVariant::Unencoded);
    EXPECT_THROW(count_gates(b.logical), UnsupportedError);
    // Pre-native physical circuits still hold CX/H.
    EXPECT_THROW(count_gates(b.physical), UnsupportedError);
}

TEST(CountGates, MoveCountedPerBlock) {
    Circuit c = two_atoms();
    Gate m = gate(GateKind::Move, {0, 1});
    m.dcol = 1;
    c.gates.push_back(m);
    c.gates.push_back(gate(GateKind::CZ, {0, 1}));
    auto counts = count_gates(c);
    EXPECT_EQ(counts["MOVE"], 1);
    EXPECT_EQ(counts["CZ"], 1);
}

TEST(Schedule, SingleGateOneMoment) {
    Circuit c = two_atoms();
    c.gates.push_back(gate(GateKind::CZ, {0, 1}));
    EXPECT_EQ(schedule_moments(c).moments.size(), 1u);
}

TEST(Schedule, OutsideInSixQubitsHasThreeLayers) {
    Built b = ladder(Family::LadderOutsideIn, 6, false, "111111");
    int cx = 0;
    for (const auto &g : b.logical.gates) {
        cx += g.kind == GateKind::CX;
    }
    EXPECT_EQ(cx, 5);
    EXPECT_EQ(two_qubit_depth(schedule_moments(b.logical)), 3);
}

TEST(Schedule, OutsideInDepthGrowsWithN) {
    for (int n : {4, 6, 8, 10, 12}) {
        Built b = ladder(Family::LadderOutsideIn, n, false);
        int cx = 0;
        for (const auto &g : b.logical.gates) {
            cx += g.kind == GateKind::CX;
        }
        EXPECT_EQ(two_qubit_depth(schedule_moments(b.logical)), (cx + 1) / 2) << n;
    }
}

TEST(Schedule, ConstantDepthBodyIndependentOfN) {
    // Bell layer, two parallel CNOT layers and the final intra-row CNOT; ASAP layering runs the
    // final CNOT alongside the second parallel layer whenever the last row is free.
    int first = -1;
    for (int n : {8, 12, 16, 20}) {
        Built b = ladder(Family::LadderConstantDepth, n, false);
        int depth = two_qubit_depth(schedule_moments(b.logical));
        if (first < 0) {
            first = depth;
        }
        EXPECT_EQ(depth, first) << n;
        EXPECT_LE(depth, 4) << n;
    }
}

TEST(Schedule, IdempotentAndOrderPreserving) {
    Circuit n1 = schedule_moments(lower(build_shor(ShorVariant::TwoRow).physical));
    Circuit n2 = schedule_moments(n1);
    EXPECT_EQ(circuit_to_text(n1), circuit_to_text(n2));
    EXPECT_TRUE(validate(n1).empty());
}

TEST(Serialization, RoundTripIsBitExact) {
    std::vector<Circuit> cs;
    cs.push_back(build_shor(ShorVariant::ThreeRow).logical);
    cs.push_back(lower(build_shor(ShorVariant::TwoRowLDU).physical));
    cs.push_back(schedule_moments(lower(ladder(Family::LadderConstantDepth, 8, true).physical)));
    cs.push_back(build_mhc_prep("0111", true).physical);
    for (const auto &c : cs) {
        std::string t = circuit_to_text(c);
        Circuit back = circuit_from_text(t);
        EXPECT_EQ(circuit_to_text(back), t);
        EXPECT_TRUE(back == c) << c.name;
        EXPECT_EQ(circuit_hash(back), circuit_hash(c));
    }
}

TEST(Serialization, MalformedInputThrows) {
    EXPECT_ANY_THROW(circuit_from_text("not a circuit"));
}

TEST(Timeline, OneLinePerMoment) {
    Circuit c = schedule_moments(lower(build_shor(ShorVariant::Unencoded).physical));
    std::string t = timeline_text(c);
    EXPECT_EQ(static_cast<size_t>(std::count(t.begin(), t.end(), '\n')), c.moments.size());
}
