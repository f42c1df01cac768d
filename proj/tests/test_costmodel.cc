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

#include "mqec/costmodel.h"
#include "mqec/errors.h"

using namespace mqec;

namespace {

std::vector<int> range(int lo, int hi, int step = 1) {
    std::vector<int> v;
    for (int x = lo; x <= hi; x += step) {
        v.push_back(x);
    }
    return v;
}

}  // namespace

TEST(LayerCost, NoMovementIsMeasurementBound) {
    for (int d : {1, 3, 31, 101}) {
        auto c = layer_cost(d, 0);
        EXPECT_DOUBLE_EQ(c.seconds, 1e-3);
        EXPECT_EQ(c.regime, Regime::Measurement);
    }
}

TEST(LayerCost, CrossesIntoMovementAnalytically) {
    TimingParams p;
    p.t_move_per_site = 1e-4;
    // 5 spaces * d=3 * 1e-4 = 1.5 ms > 1 ms.
    auto c = layer_cost(3, 5, p);
    EXPECT_EQ(c.regime, Regime::Movement);
    EXPECT_DOUBLE_EQ(c.seconds, 1.5e-3);
    // 2 * 3 * 1e-4 = 0.6 ms.
    EXPECT_EQ(layer_cost(3, 2, p).regime, Regime::Measurement);
}

TEST(LayerCost, TieGoesToMeasurement) {
    TimingParams p;
    p.t_measure = 1.0;
    p.t_move_per_site = 0.25;
    auto c = layer_cost(4, 1, p);
    EXPECT_EQ(c.regime, Regime::Measurement);
    EXPECT_DOUBLE_EQ(c.seconds, 1.0);
}

TEST(LayerCost, SingleSpaceMeasurementBoundUnderDefaults) {
    for (int d = 3; d <= 31; d += 2) {
        EXPECT_EQ(layer_cost(d, 1).regime, Regime::Measurement) << d;
    }
}

TEST(LayerCost, MonotoneInEveryArgument) {
    for (int d = 1; d <= 31; d++) {
        for (int s = 0; s <= 32; s++) {
            double c = layer_cost(d, s).seconds;
            EXPECT_LE(c, layer_cost(d + 1, s).seconds);
            EXPECT_LE(c, layer_cost(d, s + 1).seconds);
            TimingParams slower;
            slower.t_move_per_site = 6e-5;
            EXPECT_LE(c, layer_cost(d, s, slower).seconds);
        }
    }
}

TEST(LayerCost, RejectsBadArguments) {
    EXPECT_THROW(layer_cost(0, 1), ConfigError);
    EXPECT_THROW(layer_cost(3, -1), ConfigError);
    TimingParams p;
    p.t_measure = 0;
    EXPECT_THROW(layer_cost(3, 1, p), ConfigError);
}

TEST(RegimeMap, ZeroMoveCostIsAllMeasurement) {
    TimingParams p;
    p.t_move_per_site = 0;
    auto m = regime_map(range(3, 31, 2), range(0, 32), p);
    for (const auto &c : m.cells) {
        EXPECT_EQ(c.cost.regime, Regime::Measurement);
    }
}

TEST(RegimeMap, BoundaryMonotoneOnFullGrid) {
    auto d = range(3, 31, 2);
    auto s = range(1, 32);
    auto m = regime_map(d, s);
    ASSERT_EQ(m.cells.size(), d.size() * s.size());
    EXPECT_TRUE(regime_map_monotone(m));
    // Both regimes appear under the defaults, so the boundary is actually exercised.
    bool movement = false, measurement = false;
    for (const auto &c : m.cells) {
        movement |= c.cost.regime == Regime::Movement;
        measurement |= c.cost.regime == Regime::Measurement;
    }
    EXPECT_TRUE(movement);
    EXPECT_TRUE(measurement);
    EXPECT_EQ(m.at(0, 0).d, 3);
    EXPECT_EQ(m.at(0, 0).spaces, 1);
    EXPECT_EQ(m.at(d.size() - 1, s.size() - 1).cost.regime, Regime::Movement);
}

TEST(RegimeMap, MonotoneCheckDetectsViolation) {
    auto m = regime_map({3, 5}, {0, 1, 2});
    m.cells[0].cost.regime = Regime::Movement;
    EXPECT_FALSE(regime_map_monotone(m));
}

TEST(RegimeMap, EmptyRangesRejected) {
    EXPECT_THROW(regime_map({}, {1}), ConfigError);
    EXPECT_THROW(regime_map({3}, {}), ConfigError);
}
