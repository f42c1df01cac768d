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


// Parallel kernels against their serial references: shot sampling, distance search and bootstrap.

#include <benchmark/benchmark.h>

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/codes.h"
#include "mqec/compiler.h"
#include "mqec/noise.h"
#include "mqec/simulator.h"

namespace {

using namespace mqec;

const Circuit &ladder8() {
    static const Circuit c = [] {
        ExperimentSpec s;
        s.family = Family::LadderConstantDepth;
        s.n_logical = 8;
        s.encoded = true;
        s.initial_bits = random_ladder_inputs(8, 1, 8)[0];
        return lower(build(s).physical);
    }();
    return c;
}

void BM_ShotsParallel(benchmark::State &state) {
    NoiseModel nm;
    const Circuit &c = ladder8();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_shots(c, nm, state.range(0), 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShotsParallel)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_ShotsSerial(benchmark::State &state) {
    NoiseModel nm;
    const Circuit &c = ladder8();
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_shots_serial(c, nm, state.range(0), 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShotsSerial)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

const StabilizerCode &mhc() {
    static const StabilizerCode c = concatenate_self(c4_code());
    return c;
}

void BM_DistanceParallel(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_distance(mhc(), static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_DistanceParallel)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_DistanceSerial(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_distance_serial(mhc(), static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_DistanceSerial)->Arg(4)->Unit(benchmark::kMillisecond);

const std::vector<DecodedSample> &samples() {
    static const std::vector<DecodedSample> s = [] {
        Circuit c = lower(build_shor(ShorVariant::TwoRow).physical);
        NoiseModel nm;
        nm.alpha = 4;
        return postprocess(c, run_shots(c, nm, 20000, 3), {});
    }();
    return s;
}

void bootstrap(benchmark::State &state, bool parallel) {
    Distribution ideal = build_shor(ShorVariant::TwoRow).ideal;
    BootstrapOptions o;
    o.resamples = static_cast<int>(state.range(0));
    o.parallel = parallel;
    const auto &s = samples();
    for (auto _ : state) {
        benchmark::DoNotOptimize(tvd_estimate(s, ideal, o));
    }
}
void BM_BootstrapParallel(benchmark::State &state) {
    bootstrap(state, true);
}
void BM_BootstrapSerial(benchmark::State &state) {
    bootstrap(state, false);
}
BENCHMARK(BM_BootstrapParallel)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BootstrapSerial)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
