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

#include "mqec/noise.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "mqec/errors.h"

namespace mqec {

namespace {

const char *kChannelNames[kNumChannels] = {
    "cz_pauli", "cz_leak", "cz_loss", "gr_pauli", "rz_dephase",
    "prep_flip", "meas_flip", "meas_loss", "move_phase", "idle_dephase",
};

std::string num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace

const char *channel_name(Channel c) {
    return kChannelNames[static_cast<int>(c)];
}

Channel channel_from_name(const std::string &name) {
    for (int i = 0; i < kNumChannels; i++) {
        if (name == kChannelNames[i]) {
            return static_cast<Channel>(i);
        }
    }
    throw ConfigError("unknown noise channel '" + name + "'");
}

NoiseModel NoiseModel::zero() {
    NoiseModel m;
    m.base.fill(0);
    return m;
}

double NoiseModel::rate(Channel c) const {
    double r = base[static_cast<int>(c)];
    if (scope == AlphaScope::All || alpha_channels.count(c)) {
        r *= alpha;
    }
    return std::clamp(r, 0.0, 1.0);
}

std::vector<std::string> NoiseModel::clamp_warnings() const {
    std::vector<std::string> out;
    for (int i = 0; i < kNumChannels; i++) {
        auto c = static_cast<Channel>(i);
        double r = base[i];
        if (scope == AlphaScope::All || alpha_channels.count(c)) {
            r *= alpha;
        }
        if (r > 1) {
            out.push_back(std::string("noise channel ") + kChannelNames[i] + " scaled to " + num(r) +
                          ", clamped to 1");
        }
    }
    return out;
}

std::string NoiseModel::to_text() const {
    std::string s;
    for (int i = 0; i < kNumChannels; i++) {
        s += std::string(kChannelNames[i]) + "=" + num(base[i]) + ";";
    }
    s += "alpha=" + num(alpha) + ";scope=" + (scope == AlphaScope::All ? "all" : "subset");
    if (scope == AlphaScope::Subset) {
        s += ":";
        bool first = true;
        for (Channel c : alpha_channels) {
            s += (first ? "" : ",") + std::string(channel_name(c));
            first = false;
        }
    }
    s += ";leak_readout=" + std::to_string(leak_readout[0]) + std::to_string(leak_readout[1]);
    s += std::string(";twirl=") + (twirl ? "1" : "0");
    s += std::string(";idle=") + (idle_duration_weighted ? "duration:" + num(move_duration) : "moment");
    return s;
}

Twirl twirl_rz(double theta) {
    double q = theta / (std::numbers::pi / 2);
    double k = std::nearbyint(q);
    double delta = (q - k) * (std::numbers::pi / 2);
    Twirl t;
    t.quarter_turns = static_cast<int>(((static_cast<long long>(k) % 4) + 4) % 4);
    double s = std::sin(delta / 2);
    t.z_probability = s * s;
    return t;
}

}  // namespace mqec
