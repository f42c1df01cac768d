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

#ifndef MQEC_CONFIG_H
#define MQEC_CONFIG_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/costmodel.h"
#include "mqec/noise.h"

namespace mqec {

// One experiment of a suite. Ladders and MHC prep may carry several inputs; each input is its
// own circuit and the shot budget is split evenly across them.
struct ExperimentConfig {
    std::string id;
    ExperimentSpec spec;
    std::vector<std::string> inputs;  // explicit bit strings; empty means spec.initial_bits
    int random_inputs = 0;            // ladders: draw this many inputs from spec.seed instead
    std::optional<uint64_t> shots;    // overrides the run default
    int line = 0;
};

// Encoded/unencoded pair compared in a sweep.
struct PairConfig {
    std::string id;
    std::string encoded;
    std::string unencoded;
    int line = 0;
};

// Logical-qubit scaling study over constant-depth ladders.
struct ScalingConfig {
    std::vector<int> n_values;
    int random_inputs = 1;
    uint64_t input_seed = 7;
    std::optional<uint64_t> shots;
};

struct CostConfig {
    TimingParams timing;
    std::vector<int> d_values;
    std::vector<int> space_values;
};

struct Config {
    std::string origin;  // file name used in diagnostics
    std::string name = "run";
    uint64_t seed = 1;
    int threads = 0;
    std::string out;  // empty: <output root>/<name>
    uint64_t shots = 5000;
    PostProcessConfig post;
    BootstrapOptions bootstrap;
    bool write_records = true;
    NoiseModel noise;
    std::vector<double> alphas;  // sweep grid, strictly increasing
    std::optional<uint64_t> sweep_shots;
    std::vector<ExperimentConfig> experiments;
    std::vector<PairConfig> pairs;
    std::optional<ScalingConfig> scaling;
    std::optional<CostConfig> costmodel;

    const ExperimentConfig &experiment(const std::string &id) const;
};

// Flat line-oriented format: "[section]" or "[section id]" headers, "key = value" lines,
// '#' comments. Throws ConfigError with "<origin>:<line>: <field>: <message>".
Config parse_config(const std::string &text, const std::string &origin = "config");
Config load_config(const std::string &path);

// Documentation of every section and key, printed by the CLI.
std::string config_reference();

}  // namespace mqec

#endif
