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


#ifndef MQEC_EXPERIMENT_H
#define MQEC_EXPERIMENT_H

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/compiler.h"
#include "mqec/config.h"
#include "mqec/records.h"
#include "mqec/report.h"

namespace mqec {

struct PreparedCircuit {
    std::string input;  // empty for Shor
    Built built;
    Circuit native;
};

// An experiment built and lowered to the native gate set, one circuit per input.
struct PreparedExperiment {
    ExperimentConfig config;
    std::vector<PreparedCircuit> circuits;
};

// Inputs after resolving random_inputs.
std::vector<std::string> experiment_inputs(const ExperimentConfig &e);
PreparedExperiment prepare_experiment(const ExperimentConfig &e, const CompileOptions &opts = {});

struct RunOptions {
    PostProcessConfig post;
    BootstrapOptions bootstrap;
    bool keep_records = false;
    bool parallel = true;
};

struct ExperimentRun {
    MetricRow row;
    Distribution empirical;  // single-input experiments with accepted shots
    std::vector<std::vector<ShotRecord>> records;  // per circuit, when kept
    std::vector<uint64_t> circuit_seeds;
};

// Seed for (run seed, experiment id, grid index); independent of thread count and order.
uint64_t derive_seed(uint64_t seed, const std::string &id, uint64_t index);

// Simulates, post-processes and scores one experiment at one noise setting. Shots are split
// evenly across inputs; multi-input experiments are scored by pooled match/mismatch.
ExperimentRun run_experiment(const PreparedExperiment &exp, const NoiseModel &noise, uint64_t shots,
                             uint64_t seed, const RunOptions &opts = {});

// Encoded/unencoded TVD curves over an alpha grid plus the pseudothreshold.
SweepSeries run_pair_sweep(const std::string &pair, const PreparedExperiment &encoded,
                           const PreparedExperiment &unencoded, const NoiseModel &base,
                           const std::vector<double> &alphas, uint64_t shots, uint64_t seed,
                           const RunOptions &opts = {});

std::vector<CurvePoint> tvd_curve(const std::vector<MetricRow> &rows);

// Scaling study: constant-depth ladders at each N, encoded vs unencoded.
struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::vector<SweepSeries> series;
};
ScalingResult sweep_scaling(const Config &cfg, std::ostream *log = nullptr);

// File-emitting drivers used by the CLI. Return the output directory.
std::string resolve_out_dir(const Config &cfg, const std::string &override_out);
std::string execute_run(const Config &cfg, const std::string &out_dir, std::ostream &log);
std::string execute_sweep(const Config &cfg, const std::string &out_dir, std::ostream &log);

// Oracle-equivalence suite over every builder family. Prints one line per check.
bool verify_suite(std::ostream &log, bool quick = false);

}  // namespace mqec

#endif
