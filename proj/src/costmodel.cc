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

#include "mqec/costmodel.h"

#include <algorithm>

#include "mqec/errors.h"

namespace mqec {

const char *regime_name(Regime r) {
    return r == Regime::Measurement ? "measurement" : "movement";
}

LayerCost layer_cost(int d, int logical_spaces, const TimingParams &params) {
    if (d < 1 || logical_spaces < 0) {
        throw ConfigError("layer_cost needs d >= 1 and logical_spaces >= 0");
    }
    if (params.t_measure <= 0 || params.t_move_per_site < 0) {
        throw ConfigError("timing parameters must be positive");
    }
    double move = static_cast<double>(logical_spaces) * d * params.t_move_per_site;
    if (move > params.t_measure) {
        return {move, Regime::Movement};
    }
    return {params.t_measure, Regime::Measurement};
}

RegimeMap regime_map(const std::vector<int> &d_values, const std::vector<int> &space_values,
                     const TimingParams &params) {
    if (d_values.empty() || space_values.empty()) {
        throw ConfigError("regime_map needs non-empty ranges");
    }
    RegimeMap map;
    map.d_values = d_values;
    map.space_values = space_values;
    map.cells.reserve(d_values.size() * space_values.size());
    for (int d : d_values) {
        for (int s : space_values) {
            map.cells.push_back({d, s, layer_cost(d, s, params)});
        }
    }
    return map;
}

bool regime_map_monotone(const RegimeMap &map) {
    size_t nd = map.d_values.size();
    size_t ns = map.space_values.size();
    auto check = [&](auto cell_at, size_t len) {
        int switches = 0;
        for (size_t i = 1; i < len; i++) {
            Regime a = cell_at(i - 1).cost.regime;
            Regime b = cell_at(i).cost.regime;
            if (a != b) {
                if (a == Regime::Movement) {
                    return false;
                }
                switches++;
            }
        }
        return switches <= 1;
    };
    for (size_t di = 0; di < nd; di++) {
        if (!check([&](size_t si) -> const RegimeCell & { return map.at(di, si); }, ns)) {
            return false;
        }
    }
    for (size_t si = 0; si < ns; si++) {
        if (!check([&](size_t di) -> const RegimeCell & { return map.at(di, si); }, nd)) {
            return false;
        }
    }
    return true;
}

}  // namespace mqec
