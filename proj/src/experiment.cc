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


#include "mqec/experiment.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>

#include <omp.h>

#include "mqec/errors.h"
#include "mqec/simulator.h"
#include "mqec/statevector.h"

namespace mqec {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path &path, const std::string &text) {
    fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ConfigError("cannot write " + path.string());
    }
    f << text;
}

uint64_t fnv1a(const std::string &s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h = (h ^ c) * 1099511628211ULL;
    }
    return h;
}

std::string circuit_file_stem(const PreparedExperiment &exp, size_t i) {
    if (exp.circuits.size() == 1) {
        return exp.config.id;
    }
    return exp.config.id + "_" + std::to_string(i) + "_" + exp.circuits[i].input;
}

void apply_threads(int threads) {
    if (threads > 0) {
        omp_set_num_threads(threads);
    }
}

void log_clamps(const NoiseModel &noise, std::ostream &log) {
    for (const auto &w : noise.clamp_warnings()) {
        log << "warning: " << w << "\n";
    }
}

std::string gate_counts_csv(const std::vector<PreparedExperiment> &exps) {
    static const char *kinds[] = {"PREP", "CZ", "GR", "RZ", "MOVE", "M", "CC"};
    std::string out = "experiment,input,atoms";
    for (const char *k : kinds) {
        out += std::string(",") + k;
    }
    out += ",moments\n";
    for (const auto &e : exps) {
        for (const auto &pc : e.circuits) {
            auto counts = count_gates(pc.native);
            out += e.config.id + "," + pc.input + "," + std::to_string(pc.native.num_qubits);
            for (const char *k : kinds) {
                out += "," + std::to_string(counts.count(k) ? counts.at(k) : 0);
            }
            out += "," + std::to_string(schedule_moments(pc.native).moments.size()) + "\n";
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> experiment_inputs(const ExperimentConfig &e) {
    switch (e.spec.family) {
        case Family::LadderOutsideIn:
        case Family::LadderConstantDepth:
            if (e.random_inputs > 0) {
                return random_ladder_inputs(e.spec.n_logical, e.random_inputs, e.spec.seed);
            }
            return e.inputs.empty() ? std::vector<std::string>{e.spec.initial_bits} : e.inputs;
        case Family::MHCStatePrep:
            return e.inputs.empty() ? std::vector<std::string>{e.spec.initial_bits} : e.inputs;
        default:
            return {""};
    }
}

PreparedExperiment prepare_experiment(const ExperimentConfig &e, const CompileOptions &opts) {
    PreparedExperiment out;
    out.config = e;
    for (const auto &input : experiment_inputs(e)) {
        ExperimentSpec spec = e.spec;
        spec.initial_bits = input;
        PreparedCircuit pc;
        pc.input = input;
        pc.built = build(spec);
        pc.native = lower(pc.built.physical, opts);
        out.circuits.push_back(std::move(pc));
    }
    return out;
}

uint64_t derive_seed(uint64_t seed, const std::string &id, uint64_t index) {
    return shot_seed(seed ^ fnv1a(id), index);
}

ExperimentRun run_experiment(const PreparedExperiment &exp, const NoiseModel &noise, uint64_t shots,
                             uint64_t seed, const RunOptions &opts) {
    if (exp.circuits.empty()) {
        throw ConfigError("experiment '" + exp.config.id + "' has no circuits");
    }
    ExperimentRun run;
    run.row.experiment = exp.config.id;
    run.row.alpha = noise.alpha;
    run.row.seed = seed;
    size_t m = exp.circuits.size();
    SimOptions sim;
    sim.parallel = opts.parallel;
    std::vector<DecodedSample> pooled;
    for (size_t i = 0; i < m; i++) {
        const PreparedCircuit &pc = exp.circuits[i];
        uint64_t n = shots / m + (i < shots % m ? 1 : 0);
        uint64_t s = shot_seed(seed, i);
        run.circuit_seeds.push_back(s);
        auto records = run_shots(pc.native, noise, n, s, sim);
        auto samples = postprocess(pc.native, records, opts.post);
        if (m == 1) {
            run.row.report = metric_report(samples, pc.built.ideal, opts.bootstrap);
            if (run.row.report.accepted > 0) {
                run.empirical = empirical_distribution(samples);
            }
        } else {
            if (pc.built.ideal.size() != 1) {
                throw UnsupportedError("multi-input experiments need a deterministic ideal word");
            }
            const std::string &expected = pc.built.ideal.begin()->first;
            for (auto &d : samples) {
                for (auto &w : d.words) {
                    w = w == expected ? "0" : "1";
                }
                pooled.push_back(std::move(d));
            }
        }
        if (opts.keep_records) {
            run.records.push_back(std::move(records));
        }
    }
    if (m > 1) {
        run.row.report = metric_report(pooled, Distribution{{"0", 1.0}}, opts.bootstrap);
    }
    return run;
}

std::vector<CurvePoint> tvd_curve(const std::vector<MetricRow> &rows) {
    std::vector<CurvePoint> out;
    for (const auto &r : rows) {
        out.push_back({r.alpha, r.report.tvd});
    }
    return out;
}

SweepSeries run_pair_sweep(const std::string &pair, const PreparedExperiment &encoded,
                           const PreparedExperiment &unencoded, const NoiseModel &base,
                           const std::vector<double> &alphas, uint64_t shots, uint64_t seed,
                           const RunOptions &opts) {
    if (alphas.empty()) {
        throw ConfigError("empty alpha grid");
    }
    SweepSeries s;
    s.pair = pair;
    s.encoded = encoded.config.id;
    s.unencoded = unencoded.config.id;
    RunOptions o = opts;
    o.keep_records = false;
    for (size_t k = 0; k < alphas.size(); k++) {
        NoiseModel noise = base;
        noise.alpha = alphas[k];
        s.encoded_rows.push_back(
            run_experiment(encoded, noise, shots, derive_seed(seed, encoded.config.id, k), o).row);
        s.unencoded_rows.push_back(
            run_experiment(unencoded, noise, shots, derive_seed(seed, unencoded.config.id, k), o).row);
    }
    s.threshold = pseudothreshold(tvd_curve(s.encoded_rows), tvd_curve(s.unencoded_rows));
    return s;
}

ScalingResult sweep_scaling(const Config &cfg, std::ostream *log) {
    if (!cfg.scaling) {
        throw ConfigError(cfg.origin + ": no [scaling] section");
    }
    if (cfg.alphas.empty()) {
        throw ConfigError(cfg.origin + ": scaling needs a [sweep] alphas grid");
    }
    const ScalingConfig &sc = *cfg.scaling;
    uint64_t shots = sc.shots ? *sc.shots : cfg.sweep_shots ? *cfg.sweep_shots : cfg.shots;
    RunOptions opts{cfg.post, cfg.bootstrap, false, true};
    ScalingResult out;
    for (int n : sc.n_values) {
        PreparedExperiment pe[2];
        for (int enc = 0; enc < 2; enc++) {
            ExperimentConfig e;
            e.id = "cdcx" + std::to_string(n) + (enc ? "_encoded" : "_unencoded");
            e.spec.family = Family::LadderConstantDepth;
            e.spec.n_logical = n;
            e.spec.encoded = enc == 1;
            e.spec.seed = sc.input_seed;
            e.random_inputs = sc.random_inputs;
            pe[enc] = prepare_experiment(e);
        }
        if (log) {
            *log << "scaling N=" << n << ": sweeping " << cfg.alphas.size() << " alpha values\n";
        }
        SweepSeries s = run_pair_sweep("cdcx" + std::to_string(n), pe[1], pe[0], cfg.noise, cfg.alphas, shots,
                                       cfg.seed, opts);
        ScalingRow row;
        row.n_logical = n;
        row.threshold = s.threshold;
        bool found = false;
        for (const auto &r : s.encoded_rows) {
            if (r.alpha == 1.0) {
                row.encoded_at_one = r.report;
                found = true;
            }
        }
        if (!found) {
            NoiseModel noise = cfg.noise;
            noise.alpha = 1;
            row.encoded_at_one =
                run_experiment(pe[1], noise, shots, derive_seed(cfg.seed, pe[1].config.id, 1u << 20), opts)
                    .row.report;
        }
        out.rows.push_back(row);
        out.series.push_back(std::move(s));
    }
    return out;
}

std::string resolve_out_dir(const Config &cfg, const std::string &override_out) {
    if (!override_out.empty()) {
        return override_out;
    }
    const char *env = std::getenv("MQEC_OUT");
    fs::path root = env && *env ? fs::path(env) : fs::path("mqec_out");
    if (!cfg.out.empty()) {
        fs::path p(cfg.out);
        return (p.is_absolute() ? p : root / p).string();
    }
    return (root / cfg.name).string();
}

std::string execute_run(const Config &cfg, const std::string &out_dir, std::ostream &log) {
    if (cfg.experiments.empty() && !cfg.costmodel) {
        throw ConfigError(cfg.origin + ": nothing to run (no [experiment] or [costmodel] sections)");
    }
    apply_threads(cfg.threads);
    fs::path out(out_dir);
    fs::create_directories(out);
    log_clamps(cfg.noise, log);
    RunOptions opts{cfg.post, cfg.bootstrap, cfg.write_records, true};
    std::vector<MetricRow> rows;
    std::vector<DistributionRow> dists;
    std::vector<PreparedExperiment> prepared;
    for (const auto &e : cfg.experiments) {
        log << "experiment " << e.id << ": compiling\n";
        PreparedExperiment pe = prepare_experiment(e);
        uint64_t shots = e.shots ? *e.shots : cfg.shots;
        uint64_t seed = derive_seed(cfg.seed, e.id, 0);
        ExperimentRun run = run_experiment(pe, cfg.noise, shots, seed, opts);
        for (size_t i = 0; i < pe.circuits.size(); i++) {
            std::string stem = circuit_file_stem(pe, i);
            write_file(out / "circuits" / (stem + ".txt"), circuit_to_text(pe.circuits[i].native));
            if (cfg.write_records) {
                RecordHeader h;
                h.experiment = e.id;
                h.circuit_hash = circuit_hash(pe.circuits[i].native);
                h.seed = run.circuit_seeds[i];
                h.alpha = cfg.noise.alpha;
                h.shots = run.records[i].size();
                h.noise = cfg.noise.to_text();
                h.roles = roles_string(pe.circuits[i].native);
                write_file(out / "records" / (stem + ".jsonl"), records_to_jsonl(h, run.records[i]));
            }
        }
        const MetricReport &m = run.row.report;
        log << "  shots " << m.shots << ", yield " << fmt_num(m.yield) << ", tvd " << fmt_num(m.tvd.value)
            << " [" << fmt_num(m.tvd.ci68.low) << ", " << fmt_num(m.tvd.ci68.high) << "]\n";
        rows.push_back(run.row);
        if (pe.circuits.size() == 1) {
            dists.push_back({e.id, cfg.noise.alpha, run.empirical, pe.circuits[0].built.ideal});
        }
        prepared.push_back(std::move(pe));
    }
    if (!rows.empty()) {
        write_file(out / "metrics.csv", metrics_csv(rows));
        write_file(out / "metrics.json", metrics_json(rows));
        write_file(out / "distributions.csv", distributions_csv(dists));
        write_file(out / "gate_counts.csv", gate_counts_csv(prepared));
        write_file(out / "tvd_bars.svg", tvd_bars_svg(rows, cfg.name));
        write_file(out / "noise.txt", cfg.noise.to_text() + "\n");
    }
    if (cfg.costmodel) {
        RegimeMap map = regime_map(cfg.costmodel->d_values, cfg.costmodel->space_values, cfg.costmodel->timing);
        write_file(out / "regime_map.csv", regime_csv(map));
        write_file(out / "regime_map.svg", regime_svg(map));
        log << "cost model: regime map " << map.d_values.size() << "x" << map.space_values.size()
            << (regime_map_monotone(map) ? " (monotone)" : " (NOT monotone)") << "\n";
    }
    write_file(out / "schema.md", csv_schema());
    return out.string();
}

std::string execute_sweep(const Config &cfg, const std::string &out_dir, std::ostream &log) {
    if (cfg.alphas.empty()) {
        throw ConfigError(cfg.origin + ": sweep needs a non-empty [sweep] alphas grid");
    }
    if (cfg.pairs.empty() && !cfg.scaling) {
        throw ConfigError(cfg.origin + ": sweep needs [pair] sections or a [scaling] section");
    }
    apply_threads(cfg.threads);
    fs::path out(out_dir);
    fs::create_directories(out);
    for (double a : cfg.alphas) {
        NoiseModel n = cfg.noise;
        n.alpha = a;
        log_clamps(n, log);
    }
    uint64_t shots = cfg.sweep_shots ? *cfg.sweep_shots : cfg.shots;
    RunOptions opts{cfg.post, cfg.bootstrap, false, true};
    std::map<std::string, PreparedExperiment> cache;
    auto get = [&](const std::string &id) -> const PreparedExperiment & {
        auto it = cache.find(id);
        if (it == cache.end()) {
            log << "experiment " << id << ": compiling\n";
            it = cache.emplace(id, prepare_experiment(cfg.experiment(id))).first;
        }
        return it->second;
    };
    std::vector<SweepSeries> series;
    std::vector<MetricRow> rows;
    for (const auto &p : cfg.pairs) {
        log << "pair " << p.id << ": sweeping " << cfg.alphas.size() << " alpha values\n";
        const PreparedExperiment &enc = get(p.encoded);
        const PreparedExperiment &un = get(p.unencoded);
        SweepSeries s = run_pair_sweep(p.id, enc, un, cfg.noise, cfg.alphas, shots, cfg.seed, opts);
        log << "  pseudothreshold " << status_name(s.threshold.status) << " [" << fmt_num(s.threshold.low)
            << ", " << fmt_num(s.threshold.high) << "]\n";
        write_file(out / ("sweep_" + p.id + ".svg"), sweep_svg(s));
        rows.insert(rows.end(), s.encoded_rows.begin(), s.encoded_rows.end());
        rows.insert(rows.end(), s.unencoded_rows.begin(), s.unencoded_rows.end());
        series.push_back(std::move(s));
    }
    if (!series.empty()) {
        write_file(out / "sweep.csv", sweep_csv(series));
        write_file(out / "thresholds.csv", thresholds_csv(series));
        write_file(out / "sweep_metrics.csv", metrics_csv(rows));
    }
    if (cfg.scaling) {
        ScalingResult sr = sweep_scaling(cfg, &log);
        for (const auto &r : sr.rows) {
            log << "  N=" << r.n_logical << " pseudothreshold " << status_name(r.threshold.status) << " ["
                << fmt_num(r.threshold.low) << ", " << fmt_num(r.threshold.high) << "]\n";
        }
        write_file(out / "scaling.csv", scaling_csv(sr.rows));
        write_file(out / "scaling_sweep.csv", sweep_csv(sr.series));
        write_file(out / "scaling.svg", scaling_svg(sr.rows));
    }
    write_file(out / "noise.txt", cfg.noise.to_text() + "\n");
    write_file(out / "schema.md", csv_schema());
    return out.string();
}

namespace {

struct VerifyCase {
    std::string name;
    Built built;
};

std::vector<VerifyCase> verify_cases(bool quick) {
    std::vector<VerifyCase> cases;
    cases.push_back({"shor_unencoded", build_shor(ShorVariant::Unencoded)});
    cases.push_back({"shor_two_row", build_shor(ShorVariant::TwoRow)});
    cases.push_back({"shor_three_row", build_shor(ShorVariant::ThreeRow)});
    cases.push_back({"shor_two_row_ldu", build_shor(ShorVariant::TwoRowLDU)});
    std::vector<int> sizes = quick ? std::vector<int>{4} : std::vector<int>{4, 6, 8};
    for (int n : sizes) {
        for (bool enc : {false, true}) {
            for (Family f : {Family::LadderConstantDepth, Family::LadderOutsideIn}) {
                if (f == Family::LadderOutsideIn && enc && n > 6) {
                    continue;  // slow to compile; covered by the unencoded tier
                }
                ExperimentSpec s;
                s.family = f;
                s.n_logical = n;
                s.encoded = enc;
                s.initial_bits = random_ladder_inputs(n, 1, 11)[0];
                cases.push_back({std::string(family_name(f)) + "_" + std::to_string(n) +
                                     (enc ? "_encoded_" : "_unencoded_") + s.initial_bits,
                                 build(s)});
            }
        }
    }
    std::vector<std::string> mhc =
        quick ? std::vector<std::string>{"1110"} : std::vector<std::string>{"1110", "0000", "0111", "1111"};
    for (const auto &bits : mhc) {
        for (bool enc : {false, true}) {
            cases.push_back({std::string("mhc_prep_") + (enc ? "encoded_" : "unencoded_") + bits,
                             build_mhc_prep(bits, enc)});
        }
    }
    return cases;
}

}  // namespace

bool verify_suite(std::ostream &log, bool quick) {
    bool all_ok = true;
    for (auto &vc : verify_cases(quick)) {
        Circuit native = lower(vc.built.physical);
        std::vector<std::string> notes;
        bool ok = true;
        auto violations = validate(native);
        if (!violations.empty()) {
            ok = false;
            notes.push_back("validate: " + violations.front());
        }
        auto exact = tableau_distribution(native);
        auto acc = accepted_distribution(native, exact);
        double d = tvd(acc.distribution, vc.built.ideal);
        if (d > 1e-12 || std::abs(acc.accepted_probability - 1) > 1e-12) {
            ok = false;
            notes.push_back("tableau tvd " + fmt_num(d) + " acceptance " + fmt_num(acc.accepted_probability));
        }
        if (native.num_qubits <= 20) {
            auto sv = statevector_oracle(native);
            double worst = 0;
            std::map<std::string, double> keys = sv;
            for (auto &[k, v] : exact) {
                keys[k] += 0;
            }
            for (auto &[k, v] : keys) {
                double a = sv.count(k) ? sv.at(k) : 0.0;
                double b = exact.count(k) ? exact.at(k) : 0.0;
                worst = std::max(worst, std::abs(a - b));
            }
            if (worst > 2e-12) {
                ok = false;
                notes.push_back("statevector deviation " + fmt_num(worst));
            }
            if (!verify_equivalence(vc.built.logical, native)) {
                ok = false;
                notes.push_back("verify_equivalence failed");
            }
        } else {
            notes.push_back("statevector skipped (" + std::to_string(native.num_qubits) + " atoms)");
        }
        all_ok = all_ok && ok;
        log << (ok ? "PASS " : "FAIL ") << vc.name;
        for (const auto &n : notes) {
            log << "; " << n;
        }
        log << "\n";
    }
    return all_ok;
}

}  // namespace mqec
