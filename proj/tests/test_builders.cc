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
#include "mqec/errors.h"
#include "mqec/statevector.h"
#include "oracles.h"

using namespace mqec;

namespace {

Built ladder(Family f, int n, bool enc, const std::string &bits) {
    ExperimentSpec s;
    s.family = f;
    s.n_logical = n;
    s.encoded = enc;
    s.initial_bits = bits;
    return build(s);
}

}  // namespace

TEST(Shor, UnencodedIdealIsUniformOverFour) {
    Built b = build_shor(ShorVariant::Unencoded);
    auto hand = oracle::shor3_by_hand();
    EXPECT_LT(oracle::max_abs_diff(b.ideal, hand), 1e-12);
    // The same distribution from the statevector oracle on the logical circuit.
    auto sv = statevector_oracle(b.logical);
    EXPECT_LT(oracle::max_abs_diff(sv, hand), 1e-12);
}

TEST(Shor, TwoRowUsesTwoPatchesAndThreeLogicals) {
    Built b = build_shor(ShorVariant::TwoRow);
    EXPECT_EQ(b.logical.plan.patch_rows.size(), 2u);
    ASSERT_EQ(b.logical.readout.words.size(), 1u);
    EXPECT_EQ(b.logical.readout.words[0].size(), 3u);
    EXPECT_LT(oracle::max_abs_diff(b.ideal, oracle::shor3_by_hand()), 1e-12);
    // One prep flag on the upper patch.
    EXPECT_EQ(b.physical.readout.prep_flags.size(), 1u);
}

TEST(Shor, ThreeRowGivesTwoSamples) {
    Built b = build_shor(ShorVariant::ThreeRow);
    EXPECT_EQ(b.logical.plan.patch_rows.size(), 3u);
    EXPECT_EQ(b.logical.readout.words.size(), 2u);
    EXPECT_LT(oracle::max_abs_diff(b.ideal, oracle::shor3_by_hand()), 1e-12);
}

TEST(Shor, LduVariantWatchesEightDataAtoms) {
    Built b = build_shor(ShorVariant::TwoRowLDU);
    EXPECT_EQ(b.physical.readout.ldu_flags.size(), 8u);
    std::set<int> watched;
    for (auto &[flag, data] : b.physical.readout.ldu_flags) {
        EXPECT_EQ(b.physical.roles[flag], Role::LduFlag);
        EXPECT_EQ(b.physical.roles[data], Role::Data);
        watched.insert(data);
    }
    EXPECT_EQ(watched.size(), 8u);
    EXPECT_LT(oracle::max_abs_diff(b.ideal, oracle::shor3_by_hand()), 1e-12);
}

TEST(Ladder, OutsideInMatchesClassicalPropagation) {
    for (const std::string bits : {"111111", "100000", "010101", "000000"}) {
        Built b = ladder(Family::LadderOutsideIn, 6, false, bits);
        auto words = oracle::propagate_classical(b.logical, "");
        ASSERT_EQ(words.size(), 1u);
        ASSERT_EQ(b.ideal.size(), 1u) << bits;
        EXPECT_EQ(b.ideal.begin()->first, words[0]) << bits;
    }
    // 111111: running sums down each column give 1,1,0,0,1,1; the final pair XOR reads parity 0.
    Built b = ladder(Family::LadderOutsideIn, 6, false, "111111");
    EXPECT_EQ(b.ideal.begin()->first, "110010");
}

TEST(Ladder, AllZeroInputGivesZeroWord) {
    for (int n : {4, 6, 8, 10, 12}) {
        for (Family f : {Family::LadderOutsideIn, Family::LadderConstantDepth}) {
            Built b = ladder(f, n, false, std::string(n, '0'));
            ASSERT_EQ(b.ideal.size(), 1u);
            const std::string &w = b.ideal.begin()->first;
            EXPECT_EQ(w, std::string(w.size(), '0')) << n;
        }
    }
}

TEST(Ladder, ConstantDepthMatchesOutsideInOnDataRows) {
    for (int n : {4, 6, 8}) {
        auto inputs = random_ladder_inputs(n, 6, 99);
        for (const auto &bits : inputs) {
            Built cd = ladder(Family::LadderConstantDepth, n, false, bits);
            std::string data;
            for (int q : ladder_data_qubits(n, true)) {
                data.push_back(bits[q]);
            }
            Built oi = ladder(Family::LadderOutsideIn, static_cast<int>(data.size()), false, data);
            auto ref = oracle::propagate_classical(oi.logical);
            ASSERT_EQ(cd.ideal.size(), 1u);
            EXPECT_EQ(cd.ideal.begin()->first, ref[0]) << n << " " << bits;
        }
    }
}

TEST(Ladder, RowStructure) {
    EXPECT_EQ(ladder_rows(8), 4);
    EXPECT_TRUE(ladder_row_is_ancilla(1, 4));
    EXPECT_FALSE(ladder_row_is_ancilla(3, 4));
    EXPECT_FALSE(ladder_row_is_ancilla(2, 4));
    EXPECT_EQ(ladder_data_qubits(8, true), (std::vector<int>{0, 1, 4, 5, 6, 7}));
    EXPECT_EQ(ladder_data_qubits(8, false).size(), 8u);
}

TEST(Ladder, InvalidSizes) {
    EXPECT_THROW(ladder(Family::LadderConstantDepth, 7, false, "0000000"), ConfigError);
    EXPECT_THROW(ladder(Family::LadderConstantDepth, 2, false, "00"), ConfigError);
    EXPECT_THROW(ladder(Family::LadderConstantDepth, 6, false, "000"), ConfigError);
    EXPECT_THROW(ladder(Family::LadderConstantDepth, 6, false, "00a000"), ConfigError);
}

TEST(Ladder, RandomInputsReproducible) {
    auto a = random_ladder_inputs(12, 3, 5);
    auto b = random_ladder_inputs(12, 3, 5);
    EXPECT_EQ(a, b);
    EXPECT_NE(a, random_ladder_inputs(12, 3, 6));
    for (const auto &s : a) {
        for (int q = 0; q < 12; q++) {
            if (ladder_row_is_ancilla(q / 2, ladder_rows(12))) {
                EXPECT_EQ(s[q], '0');
            }
        }
    }
}

TEST(Ladder, EncodedHasFlagColumnMove) {
    Built b = ladder(Family::LadderConstantDepth, 8, true, random_ladder_inputs(8, 1, 3)[0]);
    int moves = 0;
    for (const auto &g : b.physical.gates) {
        if (g.kind == GateKind::Move) {
            moves++;
            EXPECT_EQ(g.drow, 0);
            EXPECT_EQ(g.dcol, -(b.physical.grid.cols - 1));
            EXPECT_EQ(g.targets.size(), 4u);  // one flag per row
        }
    }
    EXPECT_EQ(moves, 1);
}

TEST(Mhc, TestedBitstringsAreDeterministic) {
    for (const std::string bits : {"1110", "0000", "0111", "1111"}) {
        for (bool enc : {false, true}) {
            Built b = build_mhc_prep(bits, enc);
            ASSERT_EQ(b.ideal.size(), 1u);
            EXPECT_EQ(b.ideal.begin()->first, bits);
        }
    }
}

TEST(Mhc, FivePatchesAndLogicalFlag) {
    Built b = build_mhc_prep("0000", true);
    EXPECT_EQ(b.physical.readout.patches.size(), 5u);
    EXPECT_FALSE(b.physical.readout.logical_flags.empty());
    EXPECT_EQ(b.physical.readout.prep_flags.size(), 5u);
}

TEST(Mhc, BadLength) {
    EXPECT_THROW(build_mhc_prep("111"), ConfigError);
    EXPECT_THROW(build_mhc_prep("11111"), ConfigError);
}

TEST(Ldu, InsertAddsFlagsNextToTargets) {
    Built b = build_shor(ShorVariant::TwoRow);
    Circuit base = b.physical;
    std::vector<int> data;
    for (int a = 0; a < base.num_qubits; a++) {
        if (base.roles[a] == Role::Data) {
            data.push_back(a);
        }
    }
    Circuit with = insert_ldus(base, {data[0]}, base.gates.size() - 1);
    EXPECT_EQ(with.num_qubits, base.num_qubits + 1);
    EXPECT_EQ(with.roles.back(), Role::LduFlag);
    ASSERT_EQ(with.readout.ldu_flags.size(), 1u);
    EXPECT_EQ(with.readout.ldu_flags[0].second, data[0]);
    EXPECT_TRUE(validate(with).empty());
}

TEST(Ldu, RejectsNonDataTarget) {
    Built b = build_shor(ShorVariant::TwoRow);
    int flag = b.physical.readout.prep_flags[0];
    EXPECT_THROW(insert_ldus(b.physical, {flag}, 0), ConfigError);
    EXPECT_THROW(insert_ldus(b.physical, {0}, b.physical.gates.size() + 5), ConfigError);
}

TEST(Family, NamesRoundTrip) {
    for (Family f : {Family::ShorUnencoded, Family::ShorTwoRow, Family::ShorThreeRow, Family::ShorTwoRowLDU,
                     Family::LadderOutsideIn, Family::LadderConstantDepth, Family::MHCStatePrep}) {
        EXPECT_EQ(family_from_name(family_name(f)), f);
    }
    EXPECT_THROW(family_from_name("nope"), ConfigError);
}
