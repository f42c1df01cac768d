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

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/compiler.h"
#include "mqec/errors.h"
#include "mqec/simulator.h"
#include "mqec/statevector.h"
#include "oracles.h"

using namespace mqec;

namespace {

std::map<std::string, int> native_counts(ShorVariant v) {
    return count_gates(lower(build_shor(v).physical));
}

int get(const std::map<std::string, int> &m, const char *k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

}  // namespace

TEST(GoldenCounts, TwoRowShor) {
    auto c = native_counts(ShorVariant::TwoRow);
    EXPECT_EQ(get(c, "CZ"), 11);
    EXPECT_EQ(get(c, "GR"), 5);
    EXPECT_EQ(get(c, "MOVE"), 1);
}

TEST(GoldenCounts, ThreeRowShor) {
    auto c = native_counts(ShorVariant::ThreeRow);
    EXPECT_EQ(get(c, "CZ"), 22);
    EXPECT_EQ(get(c, "GR"), 5);
    EXPECT_EQ(get(c, "MOVE"), 1);
}

TEST(GoldenCounts, LduAddsSixteenCzAndOneGr) {
    auto base = native_counts(ShorVariant::TwoRow);
    auto ldu = native_counts(ShorVariant::TwoRowLDU);
    EXPECT_EQ(get(ldu, "CZ") - get(base, "CZ"), 16);
    EXPECT_EQ(get(ldu, "GR") - get(base, "GR"), 1);
}

TEST(Lower, IdentityPatchCostsOnlyThePrep) {
    Circuit logical = oracle::single_patch_identity();
    Circuit native = lower(logical);
    auto c = count_gates(native);
    EXPECT_EQ(get(c, "CZ"), 5);  // flagged |00> prep only
    EXPECT_TRUE(verify_equivalence(logical, native));
}

TEST(Lower, OutputIsNativeAndValid) {
    for (auto v : {ShorVariant::Unencoded, ShorVariant::TwoRow, ShorVariant::ThreeRow, ShorVariant::TwoRowLDU}) {
        Circuit n = lower(build_shor(v).physical);
        for (const auto &g : n.gates) {
            EXPECT_TRUE(is_native(g.kind)) << gate_name(g.kind);
        }
        EXPECT_TRUE(validate(n).empty());
    }
}

TEST(Lower, Deterministic) {
    Built b = build_shor(ShorVariant::ThreeRow);
    EXPECT_EQ(circuit_to_text(lower(b.physical)), circuit_to_text(lower(b.physical)));
    EXPECT_EQ(circuit_to_text(lower(b.logical)), circuit_to_text(lower(b.physical)));
}

TEST(Lower, CorrectionsPassThrough) {
    ExperimentSpec s;
    s.family = Family::LadderConstantDepth;
    s.n_logical = 8;
    s.initial_bits = "10001101";
    Built b = build(s);
    int before = 0, after = 0;
    for (const auto &g : b.physical.gates) {
        before += g.kind == GateKind::ClassicalCorrection;
    }
    for (const auto &g : lower(b.physical).gates) {
        after += g.kind == GateKind::ClassicalCorrection;
    }
    EXPECT_GT(before, 0);
    EXPECT_EQ(before, after);
}

TEST(Equivalence, UnencodedShor) {
    Built b = build_shor(ShorVariant::Unencoded);
    EXPECT_TRUE(verify_equivalence(b.logical, lower(b.physical)));
}

TEST(Equivalence, EncodedShorVariants) {
    for (auto v : {ShorVariant::TwoRow, ShorVariant::ThreeRow, ShorVariant::TwoRowLDU}) {
        Built b = build_shor(v);
        EXPECT_TRUE(verify_equivalence(b.logical, lower(b.physical)));
    }
}

TEST(Equivalence, InjectedErrorDetected) {
    Built b = build_shor(ShorVariant::Unencoded);
    Circuit n = lower(b.physical);
    ASSERT_TRUE(verify_equivalence(b.logical, n));
    // One extra X on a single atom just before readout shifts the distribution.
    size_t first_measure = 0;
    while (n.gates[first_measure].kind != GateKind::Measure) {
        first_measure++;
    }
    Gate x;
    x.kind = GateKind::X;
    x.targets = {1};
    Circuit bad = n;
    bad.gates.insert(bad.gates.begin() + static_cast<long>(first_measure), x);
    bad.moments.clear();
    EXPECT_FALSE(verify_equivalence(b.logical, bad));
}

TEST(Equivalence, LadderUnencoded) {
    ExperimentSpec s;
    s.family = Family::LadderConstantDepth;
    s.n_logical = 8;
    s.initial_bits = "11001011";
    Built b = build(s);
    EXPECT_TRUE(verify_equivalence(b.logical, lower(b.physical)));
}

TEST(Equivalence, CapacityCap) {
    Built b = build_mhc_prep("0000", true);
    EXPECT_THROW(verify_equivalence(b.logical, b.physical), CapacityError);
}

TEST(Routing, MisalignedPatchesRejected) {
    Circuit c = make_logical("misaligned", 4);
    c.plan.encoded = true;
    c.plan.patch_rows = {2, 4};  // not adjacent rows
    c.plan.patch_prep = {PatchPrep::Flagged00, PatchPrep::Flagged00};
    add_gate(c, GateKind::CX, {0, 2});
    add_gate(c, GateKind::CX, {1, 3});
    for (int q = 0; q < 4; q++) {
        add_gate(c, GateKind::Measure, {q});
    }
    c.readout.words = {{0, 1, 2, 3}};
    EXPECT_THROW(encode(c), RoutingError);
}

TEST(Synthesis, ReportsPulseCount) {
    CompileReport rep;
    Circuit n = lower(build_shor(ShorVariant::TwoRow).physical, {}, &rep);
    EXPECT_EQ(rep.pulses, 5);
    EXPECT_LE(rep.lower_bound, rep.pulses);
    EXPECT_EQ(static_cast<int>(rep.pattern.size()), rep.pulses);
}
