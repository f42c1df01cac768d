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

#include "mqec/config.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "mqec/errors.h"

namespace mqec {

namespace {

std::string trim(const std::string &s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

struct Parser {
    std::string origin;
    int line = 0;
    std::string section;
    std::string key;

    [[noreturn]] void fail(const std::string &msg) const {
        std::string where = origin + ":" + std::to_string(line) + ": ";
        if (!key.empty()) {
            where += (section.empty() ? "" : section + ".") + key + ": ";
        }
        throw ConfigError(where + msg);
    }

    double real(const std::string &v) const {
        try {
            size_t pos = 0;
            double x = std::stod(v, &pos);
            if (pos == v.size()) {
                return x;
            }
        } catch (const std::exception &) {
        }
        fail("expected a number, got '" + v + "'");
    }
    int64_t integer(const std::string &v) const {
        try {
            size_t pos = 0;
            long long x = std::stoll(v, &pos);
            if (pos == v.size()) {
                return x;
            }
        } catch (const std::exception &) {
        }
        fail("expected an integer, got '" + v + "'");
    }
    uint64_t count(const std::string &v) const {
        int64_t x = integer(v);
        if (x < 0) {
            fail("expected a non-negative integer, got '" + v + "'");
        }
        return static_cast<uint64_t>(x);
    }
    bool boolean(const std::string &v) const {
        if (v == "true" || v == "yes" || v == "1") {
            return true;
        }
        if (v == "false" || v == "no" || v == "0") {
            return false;
        }
        fail("expected true or false, got '" + v + "'");
    }
    double probability(const std::string &v) const {
        double x = real(v);
        if (!(x >= 0 && x <= 1)) {
            fail("probability must lie in [0, 1]");
        }
        return x;
    }
    std::vector<double> reals(const std::string &v) const {
        std::vector<double> out;
        for (const auto &s : split_list(v)) {
            out.push_back(real(s));
        }
        return out;
    }
    // "a, b, c" or "first:last[:step]".
    std::vector<int> ints(const std::string &v) const {
        std::vector<int> out;
        if (v.find(':') != std::string::npos) {
            std::vector<std::string> parts;
            std::stringstream in(v);
            std::string p;
            while (std::getline(in, p, ':')) {
                parts.push_back(trim(p));
            }
            if (parts.size() < 2 || parts.size() > 3) {
                fail("expected first:last[:step]");
            }
            int64_t a = integer(parts[0]), b = integer(parts[1]);
            int64_t step = parts.size() == 3 ? integer(parts[2]) : 1;
            if (step <= 0 || b < a) {
                fail("range must increase with a positive step");
            }
            for (int64_t x = a; x <= b; x += step) {
                out.push_back(static_cast<int>(x));
            }
            return out;
        }
        for (const auto &s : split_list(v)) {
            out.push_back(static_cast<int>(integer(s)));
        }
        return out;
    }
    std::string bits(const std::string &v) const {
        if (v.empty() || v.find_first_not_of("01") != std::string::npos) {
            fail("expected a 0/1 string, got '" + v + "'");
        }
        return v;
    }
};

bool increasing(const std::vector<int> &v) {
    return std::adjacent_find(v.begin(), v.end(), std::greater_equal<int>()) == v.end();
}

}  // namespace

const ExperimentConfig &Config::experiment(const std::string &id) const {
    for (const auto &e : experiments) {
        if (e.id == id) {
            return e;
        }
    }
    throw ConfigError("no experiment named '" + id + "'");
}

Config parse_config(const std::string &text, const std::string &origin) {
    Config cfg;
    cfg.origin = origin;
    Parser p;
    p.origin = origin;
    std::string kind;
    std::string sid;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;
    bool have_sweep_alphas = false;
    int sweep_line = 0;

    std::stringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        p.line++;
        p.key.clear();
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) {
            continue;
        }
        if (s.front() == '[') {
            if (s.back() != ']') {
                p.fail("unterminated section header");
            }
            std::string inner = trim(s.substr(1, s.size() - 2));
            size_t sp = inner.find_first_of(" \t");
            kind = sp == std::string::npos ? inner : inner.substr(0, sp);
            sid = sp == std::string::npos ? "" : trim(inner.substr(sp + 1));
            p.section = sid.empty() ? kind : kind + " " + sid;
            static const std::set<std::string> plain{"run", "noise", "sweep", "scaling", "costmodel"};
            if (plain.count(kind)) {
                if (!sid.empty()) {
                    p.fail("section [" + kind + "] takes no name");
                }
            } else if (kind == "experiment" || kind == "pair") {
                if (sid.empty() || sid.find_first_of(" \t,") != std::string::npos) {
                    p.fail("section [" + kind + "] needs a single-word name");
                }
            } else {
                p.fail("unknown section [" + kind + "]");
            }
            if (!seen_sections.insert(p.section).second) {
                p.fail("duplicate section [" + p.section + "]");
            }
            seen_keys.clear();
            if (kind == "experiment") {
                ExperimentConfig e;
                e.id = sid;
                e.line = p.line;
                e.spec.family = Family::ShorUnencoded;
                cfg.experiments.push_back(e);
            } else if (kind == "pair") {
                cfg.pairs.push_back({sid, "", "", p.line});
            } else if (kind == "scaling") {
                cfg.scaling = ScalingConfig{};
            } else if (kind == "costmodel") {
                cfg.costmodel = CostConfig{};
            } else if (kind == "sweep") {
                sweep_line = p.line;
            }
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos) {
            p.fail("expected 'key = value'");
        }
        p.key = trim(s.substr(0, eq));
        std::string v = trim(s.substr(eq + 1));
        if (kind.empty()) {
            p.fail("key outside any section");
        }
        if (!seen_keys.insert(p.key).second) {
            p.fail("duplicate key");
        }
        const std::string &k = p.key;
        auto unknown = [&]() { p.fail("unknown key in [" + kind + "]"); };

        if (kind == "run") {
            if (k == "name") {
                cfg.name = v;
            } else if (k == "seed") {
                cfg.seed = p.count(v);
            } else if (k == "threads") {
                cfg.threads = static_cast<int>(p.count(v));
            } else if (k == "out") {
                cfg.out = v;
            } else if (k == "shots") {
                cfg.shots = p.count(v);
            } else if (k == "loss_policy") {
                if (v == "discard") {
                    cfg.post.loss_policy = LossPolicy::Discard;
                } else if (v == "correct") {
                    cfg.post.loss_policy = LossPolicy::Correct;
                } else {
                    p.fail("expected discard or correct");
                }
            } else if (k == "use_ldu_flags") {
                cfg.post.use_ldu_flags = p.boolean(v);
            } else if (k == "apply_pauli_correction") {
                cfg.post.apply_pauli_correction = p.boolean(v);
            } else if (k == "bootstrap_resamples") {
                cfg.bootstrap.resamples = static_cast<int>(p.count(v));
                if (cfg.bootstrap.resamples < 1) {
                    p.fail("need at least one resample");
                }
            } else if (k == "bootstrap_seed") {
                cfg.bootstrap.seed = p.count(v);
            } else if (k == "write_records") {
                cfg.write_records = p.boolean(v);
            } else {
                unknown();
            }
        } else if (kind == "noise") {
            if (k == "alpha") {
                cfg.noise.alpha = p.real(v);
                if (cfg.noise.alpha < 0) {
                    p.fail("alpha must be non-negative");
                }
            } else if (k == "scope") {
                if (v == "all") {
                    cfg.noise.scope = AlphaScope::All;
                } else if (v == "subset") {
                    cfg.noise.scope = AlphaScope::Subset;
                } else {
                    p.fail("expected all or subset");
                }
            } else if (k == "alpha_channels") {
                cfg.noise.alpha_channels.clear();
                for (const auto &c : split_list(v)) {
                    try {
                        cfg.noise.alpha_channels.insert(channel_from_name(c));
                    } catch (const ConfigError &e) {
                        p.fail(e.what());
                    }
                }
            } else if (k == "leak_readout_a" || k == "leak_readout_b") {
                int b = static_cast<int>(p.integer(v));
                if (b != 0 && b != 1) {
                    p.fail("readout bit must be 0 or 1");
                }
                cfg.noise.leak_readout[k == "leak_readout_a" ? 0 : 1] = b;
            } else if (k == "twirl") {
                cfg.noise.twirl = p.boolean(v);
            } else if (k == "idle_mode") {
                if (v == "moment") {
                    cfg.noise.idle_duration_weighted = false;
                } else if (v == "duration") {
                    cfg.noise.idle_duration_weighted = true;
                } else {
                    p.fail("expected moment or duration");
                }
            } else if (k == "move_duration") {
                cfg.noise.move_duration = p.real(v);
                if (cfg.noise.move_duration < 0) {
                    p.fail("must be non-negative");
                }
            } else {
                Channel c = Channel::CzPauli;
                try {
                    c = channel_from_name(k);
                } catch (const ConfigError &) {
                    unknown();
                }
                cfg.noise.base[static_cast<int>(c)] = p.probability(v);
            }
        } else if (kind == "sweep") {
            if (k == "alphas") {
                cfg.alphas = p.reals(v);
                have_sweep_alphas = true;
                if (cfg.alphas.empty()) {
                    p.fail("empty alpha grid");
                }
                for (size_t i = 0; i < cfg.alphas.size(); i++) {
                    if (cfg.alphas[i] < 0 || (i > 0 && !(cfg.alphas[i] > cfg.alphas[i - 1]))) {
                        p.fail("alpha grid must be non-negative and strictly increasing");
                    }
                }
            } else if (k == "shots") {
                cfg.sweep_shots = p.count(v);
            } else {
                unknown();
            }
        } else if (kind == "experiment") {
            ExperimentConfig &e = cfg.experiments.back();
            if (k == "family") {
                try {
                    e.spec.family = family_from_name(v);
                } catch (const ConfigError &err) {
                    p.fail(err.what());
                }
            } else if (k == "n_logical") {
                e.spec.n_logical = static_cast<int>(p.integer(v));
            } else if (k == "encoded") {
                e.spec.encoded = p.boolean(v);
            } else if (k == "bits") {
                for (const auto &b : split_list(v)) {
                    e.inputs.push_back(p.bits(b));
                }
                if (e.inputs.empty()) {
                    p.fail("empty input list");
                }
            } else if (k == "random_inputs") {
                e.random_inputs = static_cast<int>(p.count(v));
            } else if (k == "seed") {
                e.spec.seed = p.count(v);
            } else if (k == "shots") {
                e.shots = p.count(v);
            } else {
                unknown();
            }
        } else if (kind == "pair") {
            PairConfig &pc = cfg.pairs.back();
            if (k == "encoded") {
                pc.encoded = v;
            } else if (k == "unencoded") {
                pc.unencoded = v;
            } else {
                unknown();
            }
        } else if (kind == "scaling") {
            ScalingConfig &sc = *cfg.scaling;
            if (k == "n_values") {
                sc.n_values = p.ints(v);
                if (sc.n_values.empty()) {
                    p.fail("empty list");
                }
            } else if (k == "random_inputs") {
                sc.random_inputs = static_cast<int>(p.count(v));
                if (sc.random_inputs < 1) {
                    p.fail("need at least one input");
                }
            } else if (k == "input_seed") {
                sc.input_seed = p.count(v);
            } else if (k == "shots") {
                sc.shots = p.count(v);
            } else {
                unknown();
            }
        } else if (kind == "costmodel") {
            CostConfig &cc = *cfg.costmodel;
            if (k == "t_measure") {
                cc.timing.t_measure = p.real(v);
                if (!(cc.timing.t_measure > 0)) {
                    p.fail("must be positive");
                }
            } else if (k == "t_move_per_site") {
                cc.timing.t_move_per_site = p.real(v);
                if (cc.timing.t_move_per_site < 0) {
                    p.fail("must be non-negative");
                }
            } else if (k == "d_values" || k == "spaces") {
                auto vals = p.ints(v);
                if (vals.empty() || !increasing(vals)) {
                    p.fail("expected a non-empty increasing list");
                }
                if (k == "d_values") {
                    if (vals.front() < 1) {
                        p.fail("distances start at 1");
                    }
                    cc.d_values = vals;
                } else {
                    if (vals.front() < 0) {
                        p.fail("spaces must be non-negative");
                    }
                    cc.space_values = vals;
                }
            } else {
                unknown();
            }
        }
    }

    // Cross-section checks.
    p.key.clear();
    if (sweep_line && !have_sweep_alphas) {
        p.line = sweep_line;
        p.fail("[sweep] needs an alphas grid");
    }
    std::set<std::string> ids;
    for (auto &e : cfg.experiments) {
        p.line = e.line;
        p.section = "experiment " + e.id;
        ids.insert(e.id);
        bool ladder = e.spec.family == Family::LadderOutsideIn || e.spec.family == Family::LadderConstantDepth;
        bool mhc = e.spec.family == Family::MHCStatePrep;
        if (ladder) {
            if (e.spec.n_logical < 2 || e.spec.n_logical % 2) {
                p.fail("n_logical must be even and at least 2");
            }
            if (e.random_inputs > 0 && !e.inputs.empty()) {
                p.fail("give either bits or random_inputs, not both");
            }
            if (e.random_inputs == 0 && e.inputs.empty()) {
                e.inputs.push_back(std::string(static_cast<size_t>(e.spec.n_logical), '0'));
            }
            for (const auto &b : e.inputs) {
                if (static_cast<int>(b.size()) != e.spec.n_logical) {
                    p.fail("bits must have n_logical characters");
                }
            }
        } else if (mhc) {
            if (e.random_inputs > 0) {
                p.fail("random_inputs applies to ladders only");
            }
            if (e.inputs.empty()) {
                e.inputs.push_back("0000");
            }
            for (const auto &b : e.inputs) {
                if (b.size() != 4) {
                    p.fail("MHC bits must have 4 characters");
                }
            }
        } else {
            if (!e.inputs.empty() || e.random_inputs > 0) {
                p.fail("Shor experiments take no inputs");
            }
        }
    }
    for (const auto &pc : cfg.pairs) {
        p.line = pc.line;
        p.section = "pair " + pc.id;
        if (!ids.count(pc.encoded) || !ids.count(pc.unencoded)) {
            p.fail("pair must name two experiments declared in this file");
        }
    }
    if (cfg.costmodel) {
        if (cfg.costmodel->d_values.empty()) {
            cfg.costmodel->d_values = {3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31};
        }
        if (cfg.costmodel->space_values.empty()) {
            for (int s = 0; s <= 32; s++) {
                cfg.costmodel->space_values.push_back(s);
            }
        }
    }
    return cfg;
}

Config load_config(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError(path + ": cannot open config file");
    }
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

std::string config_reference() {
    return R"(Config sections (key = value, '#' starts a comment):
[run]          name, seed, threads, out, shots, loss_policy (discard|correct),
               use_ldu_flags, apply_pauli_correction, bootstrap_resamples,
               bootstrap_seed, write_records
[noise]        alpha, scope (all|subset), alpha_channels (comma list),
               <channel> = base rate for cz_pauli, cz_leak, cz_loss, gr_pauli,
               rz_dephase, prep_flip, meas_flip, meas_loss, move_phase, idle_dephase,
               leak_readout_a, leak_readout_b, twirl, idle_mode (moment|duration),
               move_duration
[sweep]        alphas (comma list, strictly increasing), shots
[experiment ID] family, n_logical, encoded, bits (comma list), random_inputs,
               seed, shots
[pair ID]      encoded, unencoded (experiment ids)
[scaling]      n_values, random_inputs, input_seed, shots
[costmodel]    t_measure, t_move_per_site, d_values, spaces (list or first:last[:step])
)";
}

}  // namespace mqec
