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

#ifndef MQEC_ANALYSIS_H
#define MQEC_ANALYSIS_H

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mqec/builders.h"
#include "mqec/circuit.h"
#include "mqec/codes.h"
#include "mqec/records.h"

namespace mqec {

enum class LossPolicy : uint8_t { Discard, Correct };

enum class DiscardReason : uint8_t { None, PrepFlag, Loss, OutOfCodespace, LduFlag };
const char *reason_name(DiscardReason r);

struct PostProcessConfig {
    LossPolicy loss_policy = LossPolicy::Discard;
    bool use_ldu_flags = true;
    bool apply_pauli_correction = true;
};

struct DecodedSample {
    bool accepted = false;
    DiscardReason reason = DiscardReason::None;
    std::vector<std::string> words;  // accepted shots only
    std::string logical;             // decoded logical bits, accepted shots only
    int losses_corrected = 0;
};

// Runs the post-processing pipeline on one outcome string.
DecodedSample postprocess_one(const Circuit &circuit, const std::string &outcome, const PostProcessConfig &config);
std::vector<DecodedSample> postprocess(const Circuit &circuit, const std::vector<ShotRecord> &records,
                                       const PostProcessConfig &config);

// Exact word distribution implied by an outcome distribution, conditioned on acceptance.
struct AcceptedDistribution {
    Distribution distribution;
    double accepted_probability = 0;
};
AcceptedDistribution accepted_distribution(const Circuit &circuit, const std::map<std::string, double> &outcomes,
                                           const PostProcessConfig &config = {});

// Level-2 decoding: nearest codeword under the Z checks, ties rejected.
struct CubeDecoder {
    explicit CubeDecoder(const StabilizerCode &code);
    // Returns the logical bits (bit k in position k), or nullopt when ambiguous.
    std::optional<uint32_t> decode(uint64_t bits) const;
    uint32_t syndrome(uint64_t bits) const;

    std::vector<uint64_t> checks;
    std::vector<uint64_t> logicals;
    std::vector<uint64_t> correction;  // per syndrome
    std::vector<char> ambiguous;       // per syndrome
};
const CubeDecoder &mhc_decoder();

struct Interval {
    double low = 0;
    double high = 0;
};
struct Estimate {
    double value = 0;
    Interval ci68;
};

double tvd(const Distribution &p, const Distribution &q);
Distribution empirical_distribution(const std::vector<DecodedSample> &samples);

struct BootstrapOptions {
    int resamples = 2000;
    uint64_t seed = 1;
    bool parallel = true;
};
// Narrowest interval holding 68% of the sorted values.
Interval narrowest_interval(std::vector<double> values, double mass = 0.68);
Estimate tvd_estimate(const std::vector<DecodedSample> &samples, const Distribution &ideal,
                      const BootstrapOptions &opts = {});
Estimate error_rate(const std::vector<DecodedSample> &samples, const std::string &expected_word,
                    const BootstrapOptions &opts = {});

struct MetricReport {
    uint64_t shots = 0;
    uint64_t accepted = 0;
    Estimate tvd;
    std::optional<Estimate> error_rate;
    double yield = 0;
    std::map<std::string, double> discard_breakdown;
};
MetricReport metric_report(const std::vector<DecodedSample> &samples, const Distribution &ideal,
                           const BootstrapOptions &opts = {});

struct CurvePoint {
    double alpha = 0;
    Estimate metric;
};

enum class ThresholdStatus : uint8_t { Found, OpenEnded, Indeterminate };
const char *status_name(ThresholdStatus s);

struct Pseudothreshold {
    ThresholdStatus status = ThresholdStatus::Indeterminate;
    double low = std::numeric_limits<double>::quiet_NaN();
    double high = std::numeric_limits<double>::quiet_NaN();
};
// high: the sustained crossing, i.e. the point from which the encoded metric stays at or above
// the unencoded one through the end of the grid. low: start of the run of overlapping 68%
// intervals leading into that crossing. Linear interpolation between grid points; points with an
// undefined metric are skipped. No sustained crossing gives OpenEnded (high = inf); fewer than
// two usable points gives Indeterminate.
Pseudothreshold pseudothreshold(const std::vector<CurvePoint> &encoded, const std::vector<CurvePoint> &unencoded);

}  // namespace mqec

#endif
