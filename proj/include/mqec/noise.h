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

#ifndef MQEC_NOISE_H
#define MQEC_NOISE_H

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace mqec {

enum class Channel : uint8_t {
    CzPauli,
    CzLeak,
    CzLoss,
    GrPauli,
    RzDephase,
    PrepFlip,
    MeasFlip,
    MeasLoss,
    MovePhase,
    IdleDephase,
};
constexpr int kNumChannels = 10;
const char *channel_name(Channel c);
Channel channel_from_name(const std::string &name);

enum class AlphaScope : uint8_t { All, Subset };

// Base rates at alpha = 1. Only the CZ split follows the published raw CZ infidelity; every other
// default is an estimate.
struct NoiseModel {
    std::array<double, kNumChannels> base{
        0.0045,  // cz_pauli: total two-qubit Pauli rate per CZ
        0.001,   // cz_leak
        0.001,   // cz_loss
        2e-4,    // gr_pauli: per atom per global pulse
        1e-4,    // rz_dephase
        5e-4,    // prep_flip
        5e-4,    // meas_flip
        5e-4,    // meas_loss
        5e-4,    // move_phase: per moved atom
        1e-4,    // idle_dephase: per idle atom per moment
    };
    double alpha = 1;
    AlphaScope scope = AlphaScope::All;
    std::set<Channel> alpha_channels{Channel::CzPauli, Channel::CzLeak, Channel::CzLoss, Channel::MeasFlip,
                                     Channel::MeasLoss};
    std::array<int, 2> leak_readout{0, 1};  // bit read from LeakedA, LeakedB
    bool twirl = true;
    // Idle noise per moment, or weighted by the moment's duration in units of a CZ moment.
    bool idle_duration_weighted = false;
    double move_duration = 5;  // relative duration of a move moment

    static NoiseModel zero();

    // Scaled and clamped rate.
    double rate(Channel c) const;
    // Channels whose scaled rate exceeds 1 and is clamped.
    std::vector<std::string> clamp_warnings() const;
    std::string to_text() const;
};

// Pauli twirl of Rz(theta): nearest quarter turn k and the probability of a residual Z.
struct Twirl {
    int quarter_turns = 0;
    double z_probability = 0;
};
Twirl twirl_rz(double theta);

}  // namespace mqec

#endif
