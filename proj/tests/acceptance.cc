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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>
#include <unistd.h>

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/codes.h"
#include "mqec/compiler.h"
#include "mqec/config.h"
#include "mqec/errors.h"
#include "mqec/costmodel.h"
#include "mqec/experiment.h"
#include "mqec/noise.h"
#include "mqec/records.h"
#include "mqec/report.h"
#include "mqec/simulator.h"
#include "mqec/statevector.h"
#include "oracles.h"

using namespace mqec;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x) {
    return fmt_num(x);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int count(const std::map<std::string, int> &m, const char *k) {
    auto it = m.find(k);
    return it == m.end() ? 0 : it->second;
}

std::string source_path(const std::string &rel) {
    return std::string(MQEC_SOURCE_DIR) + "/" + rel;
}

RunOptions run_options(const Config &cfg) {
    RunOptions o;
    o.post = cfg.post;
    o.bootstrap = cfg.bootstrap;
    return o;
}

// 1. Distances of the base and concatenated codes.
Outcome code_distances() {
    auto t0 = std::chrono::steady_clock::now();
    auto d4 = verify_distance(c4_code(), 4);
    auto d16 = verify_distance(concatenate_self(c4_code()), 6);
    double t = seconds_since(t0);
    int o4 = oracle::distance_by_membership(c4_code(), 4);
    int o16 = oracle::distance_by_membership(concatenate_self(c4_code()), 6);
    bool ok = d4 == 2 && d16 == 4 && o4 == 2 && o16 == 4 && t < 60;
    return {ok, "[[4,2,2]] d=" + (d4 ? std::to_string(*d4) : "none") + " [[16,4,4]] d=" +
                    (d16 ? std::to_string(*d16) : "none") + " (membership oracle " + std::to_string(o4) + "/" +
                    std::to_string(o16) + ") in " + num(t) + " s"};
}

// 2. Codeword supports of the base code.
Outcome codeword_fidelity() {
    auto table = codeword_table(c4_code());
    auto want = oracle::c4_reference_codewords();
    size_t n = 0;
    for (auto &[k, v] : table) {
        n += v.size();
    }
    return {table == want && n == 8, std::to_string(n) + " support strings over " + std::to_string(table.size()) +
                                         " labels"};
}

// 3. Native gate counts of the compiled Shor circuits.
Outcome golden_counts() {
    auto two = count_gates(lower(build_shor(ShorVariant::TwoRow).physical));
    auto three = count_gates(lower(build_shor(ShorVariant::ThreeRow).physical));
    auto ldu = count_gates(lower(build_shor(ShorVariant::TwoRowLDU).physical));
    bool ok = count(two, "CZ") == 11 && count(two, "GR") == 5 && count(two, "MOVE") == 1 &&
              count(three, "CZ") == 22 && count(three, "GR") == 5 && count(ldu, "CZ") - count(two, "CZ") == 16 &&
              count(ldu, "GR") - count(two, "GR") == 1;
    std::ostringstream os;
    os << "two-row " << count(two, "CZ") << " CZ/" << count(two, "GR") << " GR/" << count(two, "MOVE")
       << " MOVE; three-row " << count(three, "CZ") << " CZ/" << count(three, "GR") << " GR; LDU +"
       << count(ldu, "CZ") - count(two, "CZ") << " CZ +" << count(ldu, "GR") - count(two, "GR") << " GR";
    return {ok, os.str()};
}

std::vector<Built> builder_circuits() {
    std::vector<Built> out;
    for (auto v : {ShorVariant::Unencoded, ShorVariant::TwoRow, ShorVariant::ThreeRow, ShorVariant::TwoRowLDU}) {
        out.push_back(build_shor(v));
    }
    for (int n : {4, 6, 8, 10, 12}) {
        for (Family f : {Family::LadderOutsideIn, Family::LadderConstantDepth}) {
            for (bool enc : {false, true}) {
                for (const auto &bits : random_ladder_inputs(n, 1, 100 + n)) {
                    ExperimentSpec s;
                    s.family = f;
                    s.n_logical = n;
                    s.encoded = enc;
                    s.initial_bits = bits;
                    try {
                        out.push_back(build(s));
                    } catch (const std::exception &) {
                        // Not every family/size/tier combination is constructible.
                    }
                }
            }
        }
    }
    for (const char *bits : {"1110", "0000", "0111", "1111"}) {
        out.push_back(build_mhc_prep(bits, false));
        out.push_back(build_mhc_prep(bits, true));
    }
    return out;
}

// 4. Tableau + post-processing against the statevector oracle.
Outcome oracle_equivalence() {
    int checked = 0, skipped = 0;
    double worst = 0, worst_tvd = 0, worst_discard = 0;
    std::string failed;
    for (const Built &b : builder_circuits()) {
        Circuit native;
        try {
            native = lower(b.physical);
        } catch (const CapacityError &) {
            skipped++;
            continue;
        }
        if (native.num_qubits > 20) {
            skipped++;
            continue;
        }
        auto sv = statevector_oracle(native);
        auto tab = tableau_distribution(native);
        auto acc_sv = accepted_distribution(native, sv);
        auto acc_tab = accepted_distribution(native, tab);
        double dev = std::max(oracle::max_abs_diff(sv, tab),
                              oracle::max_abs_diff(acc_sv.distribution, acc_tab.distribution));
        double d = std::max(tvd(acc_tab.distribution, b.ideal), tvd(acc_sv.distribution, b.ideal));
        double discard = 1 - std::min(acc_tab.accepted_probability, acc_sv.accepted_probability);
        worst = std::max(worst, dev);
        worst_tvd = std::max(worst_tvd, d);
        worst_discard = std::max(worst_discard, discard);
        if (dev > 2e-12 || d > 1e-12 || discard > 1e-12) {
            failed += " " + native.name;
        }
        checked++;
    }
    bool ok = failed.empty() && checked >= 20;
    return {ok, std::to_string(checked) + " circuits (" + std::to_string(skipped) +
                    " over 20 atoms skipped); max deviation " + num(worst) + ", max TVD " + num(worst_tvd) +
                    ", max discard " + num(worst_discard) + (failed.empty() ? "" : "; failed:" + failed)};
}

// 5. Exhaustive constant-depth vs sequential ladder, unencoded tier.
Outcome constant_depth_correctness() {
    int cases = 0, bad = 0;
    std::string sizes;
    for (int n : {4, 6, 8}) {
        std::vector<int> data = ladder_data_qubits(n, true);
        int m = static_cast<int>(data.size());
        for (int v = 0; v < (1 << m); v++) {
            std::string bits(n, '0');
            std::string data_bits;
            for (int i = 0; i < m; i++) {
                bits[data[i]] = (v >> i & 1) ? '1' : '0';
                data_bits.push_back(bits[data[i]]);
            }
            ExperimentSpec cd;
            cd.family = Family::LadderConstantDepth;
            cd.n_logical = n;
            cd.initial_bits = bits;
            Circuit native = lower(build(cd).physical);
            auto acc = accepted_distribution(native, statevector_oracle(native));
            ExperimentSpec oi;
            oi.family = Family::LadderOutsideIn;
            oi.n_logical = m;
            oi.initial_bits = data_bits;
            auto ref = oracle::propagate_classical(build(oi).logical);
            bool ok = ref.size() == 1 && acc.distribution.size() == 1 && acc.distribution.count(ref[0]) &&
                      std::abs(acc.distribution.at(ref[0]) - 1) < 1e-12 &&
                      std::abs(acc.accepted_probability - 1) < 1e-12;
            bad += !ok;
            cases++;
        }
        sizes += " N=" + std::to_string(n) + ":" + std::to_string(1 << m);
    }
    return {bad == 0, std::to_string(cases) + " inputs (" + sizes.substr(1) + "), " + std::to_string(bad) +
                          " mismatches"};
}

// 6. Unencoded Shor distribution.
Outcome shor_distribution() {
    Built b = build_shor(ShorVariant::Unencoded);
    Distribution uniform = {{"000", 0.25}, {"100", 0.25}, {"011", 0.25}, {"111", 0.25}};
    auto sv = statevector_oracle(b.logical);
    bool exact = oracle::max_abs_diff(sv, uniform) < 1e-12 && oracle::max_abs_diff(b.ideal, uniform) < 1e-12 &&
                 oracle::max_abs_diff(oracle::shor3_by_hand(), uniform) < 1e-12;
    Circuit native = lower(b.physical);
    auto samples = postprocess(native, run_shots(native, NoiseModel::zero(), 4096, 6), {});
    double d = tvd(empirical_distribution(samples), uniform);
    return {exact && d < 0.02, std::string("oracle ") + (exact ? "uniform" : "NOT uniform") +
                                   "; noiseless empirical TVD " + num(d) + " at 4096 shots"};
}

// 7. Encoded beats unencoded at alpha = 1 and the sweeps cross above 1.
Outcome pseudothreshold_reproduction() {
    bool ok = true;
    std::ostringstream os;
    for (const char *file : {"configs/shor_sweep.ini", "configs/cdcx_sweep.ini"}) {
        Config cfg = load_config(source_path(file));
        RunOptions opts = run_options(cfg);
        std::map<std::string, PreparedExperiment> prepared;
        for (const auto &e : cfg.experiments) {
            prepared.emplace(e.id, prepare_experiment(e));
        }
        for (const auto &p : cfg.pairs) {
            const auto &enc = prepared.at(p.encoded);
            const auto &unenc = prepared.at(p.unencoded);
            NoiseModel defaults;
            auto t0 = std::chrono::steady_clock::now();
            double te = run_experiment(enc, defaults, 50000, derive_seed(cfg.seed, enc.config.id, 1000))
                            .row.report.tvd.value;
            double tu = run_experiment(unenc, defaults, 50000, derive_seed(cfg.seed, unenc.config.id, 1000))
                            .row.report.tvd.value;
            auto series = run_pair_sweep(p.id, enc, unenc, cfg.noise, cfg.alphas, cfg.sweep_shots.value_or(cfg.shots),
                                         cfg.seed, opts);
            double t = seconds_since(t0);
            const auto &th = series.threshold;
            bool pair_ok = te < tu && th.status == ThresholdStatus::Found && th.high > 1 && t < 1800;
            ok &= pair_ok;
            os << p.id << ": alpha=1 TVD " << num(te) << " < " << num(tu) << ", crossover [" << num(th.low) << ", "
               << num(th.high) << "] (" << status_name(th.status) << ", " << num(std::round(t)) << " s); ";
        }
    }
    std::string s = os.str();
    return {ok, s.substr(0, s.size() - 2)};
}

// 8. Leakage detection units.
Outcome ldu_behavior() {
    Circuit native = lower(build_shor(ShorVariant::TwoRowLDU).physical);
    Distribution ideal = build_shor(ShorVariant::TwoRowLDU).ideal;
    const auto &pairs = native.readout.ldu_flags;
    // Inject right before the first CZ that touches each flag atom.
    std::vector<ForcedFault> certain, partial;
    for (auto [flag, data] : pairs) {
        int first = -1;
        for (size_t g = 0; g < native.gates.size() && first < 0; g++) {
            const Gate &gt = native.gates[g];
            if (gt.kind == GateKind::CZ && (gt.targets[0] == flag || gt.targets[1] == flag)) {
                first = static_cast<int>(g);
            }
        }
        if (first < 1) {
            return {false, "no CZ found on flag atom " + std::to_string(flag)};
        }
        certain.push_back({first - 1, data, FaultKind::LeakA, 1.0});
        partial.push_back({first - 1, data, FaultKind::LeakB, 0.2});
    }
    // Forced leakage on one data atom at a time raises that atom's flag in every shot.
    int flagged = 0, trials = 0;
    for (size_t i = 0; i < pairs.size(); i++) {
        for (FaultKind k : {FaultKind::LeakA, FaultKind::LeakB}) {
            SimOptions o;
            ForcedFault f = certain[i];
            f.kind = k;
            o.faults = {f};
            for (const auto &r : run_shots(native, NoiseModel::zero(), 100, 40 + i, o)) {
                flagged += r.outcome[pairs[i].first] == '1';
                trials++;
            }
        }
    }
    // Random leakage on every watched atom: no accepted shot may carry a leaked data atom.
    SimOptions o;
    o.faults = partial;
    auto recs = run_shots(native, NoiseModel::zero(), 20000, 41, o);
    auto with = postprocess(native, recs, {});
    PostProcessConfig off;
    off.use_ldu_flags = false;
    auto without = postprocess(native, recs, off);
    uint64_t data_mask = 0;
    for (auto [flag, data] : pairs) {
        data_mask |= uint64_t(1) << data;
    }
    size_t leaked_accepted = 0, accepted = 0, leaked_accepted_off = 0, wrong = 0;
    for (size_t i = 0; i < recs.size(); i++) {
        bool leaked = recs[i].leaked_mask & data_mask;
        if (with[i].accepted) {
            accepted++;
            leaked_accepted += leaked;
            for (const auto &w : with[i].words) {
                wrong += !ideal.count(w);
            }
        }
        leaked_accepted_off += without[i].accepted && leaked;
    }
    bool ok = flagged == trials && leaked_accepted == 0 && wrong == 0 && accepted > 0;
    return {ok, "flag raised in " + std::to_string(flagged) + "/" + std::to_string(trials) +
                    " forced-leak shots; with LDU post-selection " + std::to_string(leaked_accepted) +
                    " leaked shots and " + std::to_string(wrong) + " off-support words among " +
                    std::to_string(accepted) + " accepted (" + std::to_string(leaked_accepted_off) +
                    " leaked shots accepted without it)"};
}

// 9. Loss correction vs loss discard.
Outcome loss_tradeoff() {
    bool ok = true;
    std::ostringstream os;
    for (auto v : {ShorVariant::TwoRow, ShorVariant::ThreeRow}) {
        Circuit native = lower(build_shor(v).physical);
        SimOptions o;
        for (int q = 0; q < native.num_qubits; q++) {
            if (native.roles[q] == Role::Data) {
                o.faults.push_back({-1, q, FaultKind::Loss, 0.02});
            }
        }
        auto recs = run_shots(native, NoiseModel::zero(), 20000, 9, o);
        PostProcessConfig discard;
        PostProcessConfig correct;
        correct.loss_policy = LossPolicy::Correct;
        auto d = postprocess(native, recs, discard);
        auto c = postprocess(native, recs, correct);
        size_t yd = 0, yc = 0, differ = 0;
        for (size_t i = 0; i < recs.size(); i++) {
            yd += d[i].accepted;
            yc += c[i].accepted;
            if (recs[i].outcome.find('L') == std::string::npos) {
                differ += d[i].accepted != c[i].accepted || d[i].words != c[i].words;
            }
        }
        ok &= yc > yd && differ == 0;
        os << native.name << ": yield correct " << yc << " > discard " << yd << ", " << differ
           << " loss-free disagreements; ";
    }
    std::string s = os.str();
    return {ok, s.substr(0, s.size() - 2)};
}

// 10. Many-hypercube preparation.
Outcome mhc_prep() {
    int exact = 0;
    for (const char *bits : {"1110", "0000", "0111", "1111"}) {
        Circuit native = lower(build_mhc_prep(bits, true).physical);
        auto acc = accepted_distribution(native, tableau_distribution(native));
        exact += acc.distribution.size() == 1 && acc.distribution.count(bits) &&
                 std::abs(acc.accepted_probability - 1) < 1e-12;
    }
    Config cfg = load_config(source_path("configs/mhc.ini"));
    RunOptions opts = run_options(cfg);
    auto enc = run_experiment(prepare_experiment(cfg.experiment("mhc_encoded")), NoiseModel{}, 20000,
                              derive_seed(cfg.seed, "mhc_encoded", 0), opts);
    auto unenc = run_experiment(prepare_experiment(cfg.experiment("mhc_unencoded")), NoiseModel{}, 20000,
                                derive_seed(cfg.seed, "mhc_unencoded", 0), opts);
    double e = enc.row.report.error_rate ? enc.row.report.error_rate->value : NAN;
    double u = unenc.row.report.error_rate ? unenc.row.report.error_rate->value : NAN;
    bool ok = exact == 4 && e < u;
    return {ok, std::to_string(exact) + "/4 bitstrings exact; error rate encoded " + num(e) + " < unencoded " +
                    num(u) + " at 20000 shots"};
}

// 11. Cost model.
Outcome cost_model() {
    std::vector<int> ds, ss;
    for (int d = 3; d <= 31; d += 2) {
        ds.push_back(d);
    }
    for (int s = 0; s <= 32; s++) {
        ss.push_back(s);
    }
    bool ok = true;
    int moving = 0;
    for (double t_move : {0.0, 1e-5, 3e-5, 1e-4, 1e-3}) {
        TimingParams p;
        p.t_move_per_site = t_move;
        auto m = regime_map(ds, ss, p);
        ok &= regime_map_monotone(m);
        for (size_t di = 0; di < ds.size(); di++) {
            ok &= m.at(di, 0).cost.seconds == 1e-3 && m.at(di, 0).cost.regime == Regime::Measurement;
            for (size_t si = 0; si < ss.size(); si++) {
                moving += m.at(di, si).cost.regime == Regime::Movement;
            }
        }
    }
    return {ok && moving > 0, "5 timing settings x " + std::to_string(ds.size() * ss.size()) +
                                  " cells monotone; spaces=0 column 1 ms; " + std::to_string(moving) +
                                  " movement-bound cells"};
}

std::map<std::string, std::string> read_tree(const fs::path &root) {
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            out[fs::relative(e.path(), root).string()] = ss.str();
        }
    }
    return out;
}

// 12. Byte-identical records across thread counts.
Outcome determinism() {
    int max_threads = std::max(4, omp_get_max_threads());
    // Direct shot streams for every Shor variant and an encoded ladder.
    std::vector<Circuit> cs;
    for (auto v : {ShorVariant::TwoRow, ShorVariant::ThreeRow, ShorVariant::TwoRowLDU}) {
        cs.push_back(lower(build_shor(v).physical));
    }
    ExperimentSpec s;
    s.family = Family::LadderConstantDepth;
    s.n_logical = 8;
    s.encoded = true;
    s.initial_bits = random_ladder_inputs(8, 1, 8)[0];
    cs.push_back(lower(build(s).physical));
    int identical = 0;
    for (const auto &c : cs) {
        NoiseModel nm;
        nm.alpha = 2;
        std::string prev;
        bool same = true;
        for (int t : {1, 2, max_threads}) {
            SimOptions o;
            o.threads = t;
            RecordHeader h;
            h.experiment = c.name;
            h.seed = 11;
            h.shots = 5000;
            std::string text = records_to_jsonl(h, run_shots(c, nm, 5000, 11, o));
            same &= prev.empty() || text == prev;
            prev = text;
        }
        identical += same;
    }
    // Full run of a config through the driver.
    Config cfg = load_config(source_path("configs/smoke.ini"));
    fs::path root = fs::temp_directory_path() / ("mqec_acceptance_" + std::to_string(::getpid()));
    std::ostringstream sink;
    std::vector<std::map<std::string, std::string>> trees;
    for (int t : {1, max_threads}) {
        omp_set_num_threads(t);
        fs::path dir = root / ("t" + std::to_string(t));
        execute_run(cfg, dir.string(), sink);
        trees.push_back(read_tree(dir));
    }
    omp_set_num_threads(max_threads);
    fs::remove_all(root);
    size_t record_files = 0;
    for (auto &[k, v] : trees[0]) {
        record_files += k.rfind("records/", 0) == 0;
    }
    bool ok = identical == static_cast<int>(cs.size()) && trees[0] == trees[1] && record_files > 0;
    return {ok, std::to_string(identical) + "/" + std::to_string(cs.size()) +
                    " shot streams identical at 1/2/" + std::to_string(max_threads) + " threads; run output " +
                    (trees[0] == trees[1] ? "identical" : "DIFFERS") + " (" + std::to_string(trees[0].size()) +
                    " files, " + std::to_string(record_files) + " record files)"};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"code distances", code_distances},
        {"codeword fidelity", codeword_fidelity},
        {"compiler golden counts", golden_counts},
        {"oracle equivalence", oracle_equivalence},
        {"constant-depth ladder correctness", constant_depth_correctness},
        {"unencoded Shor distribution", shor_distribution},
        {"pseudothreshold reproduction", pseudothreshold_reproduction},
        {"LDU behavior", ldu_behavior},
        {"loss-correction trade-off", loss_tradeoff},
        {"MHC preparation", mhc_prep},
        {"cost model", cost_model},
        {"determinism", determinism},
    };
    int failures = 0;
    for (size_t i = 0; i < criteria.size(); i++) {
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.pass;
        std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
