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

#ifndef MQEC_COSTMODEL_H
#define MQEC_COSTMODEL_H

#include <string>
#include <vector>

namespace mqec {

// Wall-clock inputs for one logical gate layer. A logical movement space spans d physical sites.
struct TimingParams {
    double t_measure = 1e-3;  // seconds per measurement round
    // Seconds per physical lattice site moved. No published value: the default keeps one logical
    // space measurement-bound through d = 31 and is meant to be overridden.
    double t_move_per_site = 3e-5;
};

enum class Regime : unsigned char { Measurement, Movement };
const char *regime_name(Regime r);

struct LayerCost {
    double seconds = 0;
    Regime regime = Regime::Measurement;
};

// max(t_measure, logical_spaces * d * t_move_per_site); ties go to measurement.
LayerCost layer_cost(int d, int logical_spaces, const TimingParams &params = {});

struct RegimeCell {
    int d = 0;
    int spaces = 0;
    LayerCost cost;
};
struct RegimeMap {
    std::vector<int> d_values;
    std::vector<int> space_values;
    std::vector<RegimeCell> cells;  // row-major: d outer, spaces inner
    const RegimeCell &at(size_t di, size_t si) const { return cells[di * space_values.size() + si]; }
};
RegimeMap regime_map(const std::vector<int> &d_values, const std::vector<int> &space_values,
                     const TimingParams &params = {});

// True iff the regime switches to movement at most once along every row and column.
bool regime_map_monotone(const RegimeMap &map);

}  // namespace mqec

#endif
