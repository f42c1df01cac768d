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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "mqec/config.h"
#include "mqec/errors.h"

using namespace mqec;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
};

CliResult run_cli(const std::string &args) {
    std::string cmd = std::string(MQEC_CLI_PATH) + " -q " + args + " 2>&1";
    CliResult r;
    FILE *p = popen(cmd.c_str(), "r");
    if (!p) {
        return r;
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) {
        r.out.append(buf, n);
    }
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> tree(const fs::path &root) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) {
            out[fs::relative(e.path(), root).string()] = slurp(e.path());
        }
    }
    return out;
}

fs::path scratch(const std::string &name) {
    fs::path p = fs::temp_directory_path() / ("mqec_test_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p.parent_path());
    return p;
}

fs::path write_file(const std::string &name, const std::string &text) {
    fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

std::string config_error(const std::string &text) {
    try {
        parse_config(text, "t.ini");
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

const std::string kSmoke = std::string(MQEC_SOURCE_DIR) + "/configs/smoke.ini";

}  // namespace

TEST(Config, ParsesSmokeConfig) {
    Config c = load_config(kSmoke);
    EXPECT_EQ(c.name, "smoke");
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.shots, 400u);
    EXPECT_EQ(c.alphas, (std::vector<double>{1, 8}));
    ASSERT_EQ(c.experiments.size(), 3u);
    EXPECT_EQ(c.experiment("cdcx4_unencoded").inputs, std::vector<std::string>{"1011"});
    ASSERT_EQ(c.pairs.size(), 1u);
    ASSERT_TRUE(c.costmodel.has_value());
    EXPECT_EQ(c.costmodel->d_values, (std::vector<int>{3, 5, 7, 9, 11}));
    EXPECT_EQ(c.costmodel->space_values.size(), 9u);
}

TEST(Config, ErrorsNameLineAndField) {
    std::string e = config_error("[run]\nseed = 1\nshots = many\n");
    EXPECT_NE(e.find("t.ini:3"), std::string::npos) << e;
    EXPECT_NE(e.find("run.shots"), std::string::npos) << e;
    e = config_error("[run]\nbogus = 1\n");
    EXPECT_NE(e.find("t.ini:2"), std::string::npos) << e;
    EXPECT_NE(e.find("run.bogus"), std::string::npos) << e;
    e = config_error("[experiment a]\nfamily = ladder_constant_depth\nn_logical = 4\nbits = 101\n");
    EXPECT_NE(e.find("bits"), std::string::npos) << e;
    e = config_error("[noise]\nalpha = -1\n");
    EXPECT_NE(e.find("noise.alpha"), std::string::npos) << e;
    EXPECT_FALSE(config_error("[run]\nseed = 1\nseed = 2\n").empty());
    EXPECT_FALSE(config_error("[pair p]\nencoded = x\nunencoded = y\n").empty());
    EXPECT_FALSE(config_error("[mystery]\n").empty());
}

TEST(Config, EmptyAlphaGridIsError) {
    std::string e = config_error("[sweep]\nalphas =\n");
    EXPECT_NE(e.find("sweep.alphas"), std::string::npos) << e;
    EXPECT_FALSE(config_error("[sweep]\nalphas = 2, 1\n").empty());
}

TEST(Config, ReferenceListsEverySection) {
    std::string ref = config_reference();
    for (const char *s : {"[run]", "[noise]", "[sweep]", "[experiment", "[pair", "[scaling]", "[costmodel]"}) {
        EXPECT_NE(ref.find(s), std::string::npos) << s;
    }
}

TEST(Cli, RunIsByteIdenticalAcrossThreadCounts) {
    fs::path a = scratch("run_a");
    fs::path b = scratch("run_b");
    auto ra = run_cli("run " + kSmoke + " --threads 1 --out " + a.string());
    auto rb = run_cli("run " + kSmoke + " --threads 3 --out " + b.string());
    ASSERT_EQ(ra.code, 0) << ra.out;
    ASSERT_EQ(rb.code, 0) << rb.out;
    auto ta = tree(a);
    auto tb = tree(b);
    for (const char *f : {"metrics.csv", "metrics.json", "distributions.csv", "gate_counts.csv", "regime_map.csv",
                          "records/shor_two_row.jsonl", "circuits/shor_two_row.txt"}) {
        EXPECT_TRUE(ta.count(f)) << f;
    }
    EXPECT_EQ(ta, tb);
}

TEST(Cli, SweepWritesThresholdsDeterministically) {
    fs::path a = scratch("sweep_a");
    fs::path b = scratch("sweep_b");
    ASSERT_EQ(run_cli("sweep " + kSmoke + " --threads 1 --out " + a.string()).code, 0);
    ASSERT_EQ(run_cli("sweep " + kSmoke + " --threads 2 --out " + b.string()).code, 0);
    EXPECT_EQ(tree(a), tree(b));
    std::string th = slurp(a / "thresholds.csv");
    EXPECT_NE(th.find("two_row"), std::string::npos) << th;
}

TEST(Cli, SeedOverrideChangesRecords) {
    fs::path a = scratch("seed_a");
    fs::path b = scratch("seed_b");
    ASSERT_EQ(run_cli("run " + kSmoke + " --out " + a.string()).code, 0);
    ASSERT_EQ(run_cli("run " + kSmoke + " --seed 6 --out " + b.string()).code, 0);
    EXPECT_NE(slurp(a / "records/shor_two_row.jsonl"), slurp(b / "records/shor_two_row.jsonl"));
}

TEST(Cli, ExitCodes) {
    fs::path out = scratch("codes");
    auto bad = write_file("bad.ini", "[run]\nshots = -4\n");
    auto r = run_cli("run " + bad.string() + " --out " + out.string());
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.out.find("bad.ini:2"), std::string::npos) << r.out;
    auto big = write_file("big.ini",
                          "[run]\nshots = 10\n[experiment big]\nfamily = ladder_constant_depth\n"
                          "n_logical = 200\nencoded = true\n");
    EXPECT_EQ(run_cli("run " + big.string() + " --out " + out.string()).code, 2);
    EXPECT_EQ(run_cli("run /nonexistent.ini").code, 1);
    EXPECT_EQ(run_cli("frobnicate").code, 1);
    auto help = run_cli("config-help");
    EXPECT_EQ(help.code, 0);
    EXPECT_NE(help.out.find("[costmodel]"), std::string::npos);
}

TEST(Cli, VerifyQuickPasses) {
    auto r = run_cli("verify --quick");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
}

namespace {

struct ScratchCleanup : ::testing::Environment {
    void TearDown() override {
        fs::remove_all(fs::temp_directory_path() / ("mqec_test_cli_" + std::to_string(::getpid())));
    }
};
const auto *const kCleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

}  // namespace
