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


// Command-line runner: run | sweep | verify.
// Exit codes: 0 success, 1 config error, 2 capacity error, 3 verification failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "mqec/config.h"
#include "mqec/errors.h"
#include "mqec/experiment.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitVerify = 3;

struct Common {
    std::string config;
    std::string out;
    long long seed = -1;
    int threads = -1;
};

mqec::Config load(const Common &c) {
    mqec::Config cfg = mqec::load_config(c.config);
    if (c.seed >= 0) {
        cfg.seed = static_cast<uint64_t>(c.seed);
    }
    if (c.threads >= 0) {
        cfg.threads = c.threads;
    }
    return cfg;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"mqec: encoded logical-qubit experiments on a simulated neutral-atom array"};
    app.require_subcommand(1);
    bool quiet = false;
    app.add_flag("-q,--quiet", quiet, "Suppress progress output");

    Common run_args, sweep_args;
    auto add_common = [](CLI::App *sub, Common &c) {
        sub->add_option("config", c.config, "Config file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", c.out, "Output directory (default: $MQEC_OUT/<name>)");
        sub->add_option("--seed", c.seed, "Override the config seed")->check(CLI::NonNegativeNumber);
        sub->add_option("--threads", c.threads, "Worker threads (0: OpenMP default)")
            ->check(CLI::NonNegativeNumber);
    };
    CLI::App *run = app.add_subcommand("run", "Run every experiment of a config at its noise setting");
    add_common(run, run_args);
    CLI::App *sweep = app.add_subcommand("sweep", "Alpha sweeps, pseudothresholds and scaling studies");
    add_common(sweep, sweep_args);
    CLI::App *verify = app.add_subcommand("verify", "Oracle-equivalence suite over every builder family");
    bool quick = false;
    int verify_threads = -1;
    verify->add_flag("--quick", quick, "Smallest instance of each family only");
    verify->add_option("--threads", verify_threads, "Worker threads")->check(CLI::NonNegativeNumber);
    CLI::App *ref = app.add_subcommand("config-help", "Print the config file reference");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    std::ostream null_stream(nullptr);
    std::ostream &log = quiet ? null_stream : std::cerr;
    try {
        if (*ref) {
            std::cout << mqec::config_reference();
            return 0;
        }
        if (*verify) {
            if (verify_threads > 0) {
                omp_set_num_threads(verify_threads);
            }
            bool ok = mqec::verify_suite(std::cout, quick);
            std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILED\n");
            return ok ? 0 : kExitVerify;
        }
        if (*run) {
            mqec::Config cfg = load(run_args);
            std::string dir = mqec::execute_run(cfg, mqec::resolve_out_dir(cfg, run_args.out), log);
            std::cout << dir << "\n";
            return 0;
        }
        if (*sweep) {
            mqec::Config cfg = load(sweep_args);
            std::string dir = mqec::execute_sweep(cfg, mqec::resolve_out_dir(cfg, sweep_args.out), log);
            std::cout << dir << "\n";
            return 0;
        }
    } catch (const mqec::ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const mqec::CapacityError &e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}
