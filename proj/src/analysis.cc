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

#include "mqec/analysis.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "mqec/errors.h"
#include "mqec/simulator.h"

namespace mqec {

namespace {

const char *kReasonNames[] = {"none", "prep_flag", "loss", "out_of_codespace", "ldu_flag"};

// Per-circuit view of the readout used by every shot.
class Pipeline {
   public:
    Pipeline(const Circuit &c, const PostProcessConfig &cfg) : c_(c), cfg_(cfg) {
        const Readout &r = c.readout;
        int n = c.num_qubits;
        patch_of_.assign(n, -1);
        for (size_t p = 0; p < r.patches.size(); p++) {
            for (int a : r.patches[p].data) {
                if (a < 0 || a >= n) {
                    throw ConfigError("postprocess: patch atom out of range");
                }
                patch_of_[a] = static_cast<int>(p);
            }
        }
        if (cfg.loss_policy == LossPolicy::Correct && r.patches.empty()) {
            throw ConfigError("postprocess: loss correction needs an encoded circuit");
        }
        cube_patch_.assign(r.patches.size(), 0);
        const StabilizerCode c4 = c4_code();
        for (int k = 0; k < 2; k++) {
            label_mask_[k] = z_mask(c4.label_z[k]);
        }
        for (const LogicalSource &s : r.logical) {
            if (s.kind == SourceKind::Cube) {
                for (int p : s.blocks) {
                    if (p < 0 || p >= static_cast<int>(r.patches.size())) {
                        throw ConfigError("postprocess: cube block out of range");
                    }
                    cube_patch_[p] = 1;
                }
            } else if (s.kind == SourceKind::Atom && (s.atom < 0 || s.atom >= n)) {
                throw ConfigError("postprocess: logical source atom out of range");
            }
        }
        // Atoms outside patches whose readout matters: single-atom logical bits, flags, raw correction sources.
        must_read_.assign(n, 0);
        for (const LogicalSource &s : r.logical) {
            if (s.kind == SourceKind::Atom) {
                must_read_[s.atom] = 1;
            }
        }
        for (int a : r.prep_flags) {
            must_read_[a] = 1;
        }
        for (const Gate &g : c.gates) {
            if (g.kind == GateKind::ClassicalCorrection) {
                corrections_.push_back(&g);
                for (int a : g.atom_sources) {
                    must_read_[a] = 1;
                }
            }
        }
    }

    DecodedSample run(const std::string &outcome) const {
        const Readout &r = c_.readout;
        int n = c_.num_qubits;
        if (static_cast<int>(outcome.size()) != n) {
            throw ConfigError("postprocess: record has " + std::to_string(outcome.size()) + " atoms, circuit has " +
                              std::to_string(n));
        }
        DecodedSample d;
        std::string bits = outcome;
        std::vector<char> induced(n, 0);
        auto discard = [&](DiscardReason why) {
            d.accepted = false;
            d.reason = why;
            return d;
        };
        // (1) LDU flags become losses on the watched atom.
        if (cfg_.use_ldu_flags) {
            for (auto [f, t] : r.ldu_flags) {
                if (bits[f] == 'L') {
                    return discard(DiscardReason::Loss);
                }
                if (bits[f] == '1') {
                    bits[t] = 'L';
                    induced[t] = 1;
                }
            }
        }
        // (2) Loss handling.
        for (int a = 0; a < n; a++) {
            if (bits[a] == 'L' && patch_of_[a] < 0 && must_read_[a]) {
                return discard(induced[a] ? DiscardReason::LduFlag : DiscardReason::Loss);
            }
        }
        for (size_t p = 0; p < r.patches.size(); p++) {
            const auto &data = r.patches[p].data;
            int lost = 0, where = -1;
            bool by_ldu = false;
            for (int a : data) {
                if (bits[a] == 'L') {
                    lost++;
                    where = a;
                    by_ldu |= induced[a] != 0;
                }
            }
            if (!lost) {
                continue;
            }
            if (cfg_.loss_policy == LossPolicy::Discard || lost > 1) {
                return discard(by_ldu ? DiscardReason::LduFlag : DiscardReason::Loss);
            }
            int parity = 0;
            for (int a : data) {
                if (a != where) {
                    parity ^= bits[a] - '0';
                }
            }
            bits[where] = static_cast<char>('0' + parity);
            d.losses_corrected++;
        }
        // (3) Prep flags.
        for (int a : r.prep_flags) {
            if (bits[a] != '0') {
                return discard(DiscardReason::PrepFlag);
            }
        }
        // (4) Codespace check on level-1 patches.
        std::vector<int> patch_word(r.patches.size(), 0);
        for (size_t p = 0; p < r.patches.size(); p++) {
            int w = 0;
            for (int j = 0; j < 4; j++) {
                w |= (bits[r.patches[p].data[j]] - '0') << j;
            }
            patch_word[p] = w;
            if (!cube_patch_[p] && (__builtin_popcount(w) & 1)) {
                return discard(DiscardReason::OutOfCodespace);
            }
        }
        // (5) Decode.
        std::string logical(r.logical.size(), '0');
        std::map<std::array<int, 4>, uint32_t> cube_cache;
        for (size_t k = 0; k < r.logical.size(); k++) {
            const LogicalSource &s = r.logical[k];
            int v = 0;
            switch (s.kind) {
                case SourceKind::Atom:
                    v = bits[s.atom] - '0';
                    break;
                case SourceKind::Patch:
                    v = __builtin_popcount(patch_word[s.patch] & static_cast<int>(label_mask_[s.index])) & 1;
                    break;
                case SourceKind::Cube: {
                    auto it = cube_cache.find(s.blocks);
                    if (it == cube_cache.end()) {
                        uint64_t word = 0;
                        for (int b = 0; b < 4; b++) {
                            word |= uint64_t(patch_word[s.blocks[b]]) << (4 * b);
                        }
                        auto dec = mhc_decoder().decode(word);
                        if (!dec) {
                            return discard(DiscardReason::OutOfCodespace);
                        }
                        it = cube_cache.emplace(s.blocks, *dec).first;
                    }
                    v = (it->second >> s.index) & 1;
                    break;
                }
            }
            logical[k] = static_cast<char>('0' + v);
        }
        for (int k : r.logical_flags) {
            if (logical.at(k) != '0') {
                return discard(DiscardReason::PrepFlag);
            }
        }
        // (6) Pauli correction.
        if (cfg_.apply_pauli_correction) {
            for (const Gate *g : corrections_) {
                int parity = 0;
                for (size_t i = 1; i < g->targets.size(); i++) {
                    parity ^= logical[g->targets[i]] - '0';
                }
                for (int a : g->atom_sources) {
                    parity ^= bits[a] - '0';
                }
                if (parity) {
                    char &b = logical[g->targets[0]];
                    b = b == '0' ? '1' : '0';
                }
            }
        }
        d.accepted = true;
        d.logical = logical;
        for (const auto &w : r.words) {
            std::string s;
            for (int k : w) {
                s.push_back(logical[k]);
            }
            d.words.push_back(s);
        }
        return d;
    }

   private:
    const Circuit &c_;
    PostProcessConfig cfg_;
    std::vector<int> patch_of_;
    std::vector<char> cube_patch_;
    std::vector<char> must_read_;
    std::vector<const Gate *> corrections_;
    uint64_t label_mask_[2] = {0, 0};
};

std::vector<std::string> pooled_words(const std::vector<DecodedSample> &samples) {
    std::vector<std::string> out;
    for (const auto &s : samples) {
        if (s.accepted) {
            out.insert(out.end(), s.words.begin(), s.words.end());
        }
    }
    if (out.empty()) {
        throw UndefinedMetricError("metric undefined: no accepted samples");
    }
    return out;
}

// Multinomial draw by a chain of conditional binomials.
std::vector<long long> multinomial(std::mt19937_64 &g, long long n, const std::vector<double> &p) {
    std::vector<long long> out(p.size(), 0);
    double rest = 1.0;
    for (size_t i = 0; i + 1 < p.size() && n > 0; i++) {
        double q = rest > 0 ? std::clamp(p[i] / rest, 0.0, 1.0) : 0.0;
        std::binomial_distribution<long long> bin(n, q);
        out[i] = bin(g);
        n -= out[i];
        rest -= p[i];
    }
    if (!p.empty()) {
        out.back() += n;
    }
    return out;
}

template <class F>
std::vector<double> bootstrap(const BootstrapOptions &opts, F &&stat) {
    if (opts.resamples < 1) {
        throw ConfigError("bootstrap: need at least one resample");
    }
    std::vector<double> v(opts.resamples);
    if (opts.parallel) {
#pragma omp parallel for schedule(static)
        for (int b = 0; b < opts.resamples; b++) {
            std::mt19937_64 g(shot_seed(opts.seed, static_cast<uint64_t>(b)));
            v[b] = stat(g);
        }
    } else {
        for (int b = 0; b < opts.resamples; b++) {
            std::mt19937_64 g(shot_seed(opts.seed, static_cast<uint64_t>(b)));
            v[b] = stat(g);
        }
    }
    return v;
}

}  // namespace

const char *reason_name(DiscardReason r) {
    return kReasonNames[static_cast<int>(r)];
}

DecodedSample postprocess_one(const Circuit &c, const std::string &outcome, const PostProcessConfig &cfg) {
    return Pipeline(c, cfg).run(outcome);
}

std::vector<DecodedSample> postprocess(const Circuit &c, const std::vector<ShotRecord> &records,
                                       const PostProcessConfig &cfg) {
    Pipeline pipe(c, cfg);
    std::vector<DecodedSample> out(records.size());
    long long n = static_cast<long long>(records.size());
    std::string error;
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < n; i++) {
        try {
            out[i] = pipe.run(records[i].outcome);
        } catch (const std::exception &e) {
#pragma omp critical
            error = e.what();
        }
    }
    if (!error.empty()) {
        throw ConfigError(error);
    }
    return out;
}

AcceptedDistribution accepted_distribution(const Circuit &c, const std::map<std::string, double> &outcomes,
                                           const PostProcessConfig &cfg) {
    Pipeline pipe(c, cfg);
    AcceptedDistribution out;
    for (const auto &[bits, p] : outcomes) {
        DecodedSample d = pipe.run(bits);
        if (!d.accepted) {
            continue;
        }
        out.accepted_probability += p;
        for (const auto &w : d.words) {
            out.distribution[w] += p / static_cast<double>(d.words.size());
        }
    }
    if (out.accepted_probability > 0) {
        for (auto &[k, v] : out.distribution) {
            v /= out.accepted_probability;
        }
    }
    return out;
}

CubeDecoder::CubeDecoder(const StabilizerCode &code) {
    if (code.n > 20) {
        throw CapacityError("CubeDecoder: lookup table limited to 20 qubits");
    }
    for (const auto &s : code.z_stabilizers()) {
        checks.push_back(z_mask(s));
    }
    for (const auto &l : code.label_z) {
        logicals.push_back(z_mask(l));
    }
    size_t ns = size_t(1) << checks.size();
    correction.assign(ns, 0);
    ambiguous.assign(ns, 0);
    std::vector<int> best(ns, 1 << 30);
    std::vector<uint32_t> cls(ns, 0);
    for (uint64_t e = 0; e < (uint64_t(1) << code.n); e++) {
        uint32_t s = syndrome(e);
        int w = __builtin_popcountll(e);
        uint32_t l = 0;
        for (size_t k = 0; k < logicals.size(); k++) {
            l |= static_cast<uint32_t>(mask_parity(e, logicals[k])) << k;
        }
        if (w < best[s]) {
            best[s] = w;
            correction[s] = e;
            cls[s] = l;
            ambiguous[s] = 0;
        } else if (w == best[s] && l != cls[s]) {
            ambiguous[s] = 1;
        }
    }
}

uint32_t CubeDecoder::syndrome(uint64_t bits) const {
    uint32_t s = 0;
    for (size_t i = 0; i < checks.size(); i++) {
        s |= static_cast<uint32_t>(mask_parity(bits, checks[i])) << i;
    }
    return s;
}

std::optional<uint32_t> CubeDecoder::decode(uint64_t bits) const {
    uint32_t s = syndrome(bits);
    if (ambiguous[s]) {
        return std::nullopt;
    }
    uint64_t fixed = bits ^ correction[s];
    uint32_t out = 0;
    for (size_t k = 0; k < logicals.size(); k++) {
        out |= static_cast<uint32_t>(mask_parity(fixed, logicals[k])) << k;
    }
    return out;
}

const CubeDecoder &mhc_decoder() {
    static const CubeDecoder dec(concatenate_self(c4_code()));
    return dec;
}

double tvd(const Distribution &p, const Distribution &q) {
    double s = 0;
    for (const auto &[k, v] : p) {
        auto it = q.find(k);
        s += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto &[k, v] : q) {
        if (!p.count(k)) {
            s += std::abs(v);
        }
    }
    return s / 2;
}

Distribution empirical_distribution(const std::vector<DecodedSample> &samples) {
    auto words = pooled_words(samples);
    Distribution d;
    for (const auto &w : words) {
        d[w] += 1;
    }
    for (auto &[k, v] : d) {
        v /= static_cast<double>(words.size());
    }
    return d;
}

Interval narrowest_interval(std::vector<double> v, double mass) {
    if (v.empty()) {
        throw UndefinedMetricError("narrowest_interval: no values");
    }
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    size_t m = std::max<size_t>(1, static_cast<size_t>(std::ceil(mass * static_cast<double>(n))));
    m = std::min(m, n);
    size_t best = 0;
    for (size_t i = 0; i + m <= n; i++) {
        if (v[i + m - 1] - v[i] < v[best + m - 1] - v[best]) {
            best = i;
        }
    }
    return {v[best], v[best + m - 1]};
}

namespace {

// Narrowest 68% interval of the bootstrap values, shifted by the bootstrap bias estimate and
// widened if needed so it always contains the point estimate.
Interval corrected_interval(std::vector<double> v, double value) {
    double mean = 0;
    for (double x : v) {
        mean += x;
    }
    mean /= static_cast<double>(v.size());
    double bias = mean - value;
    Interval iv = narrowest_interval(std::move(v));
    iv.low = std::clamp(iv.low - bias, 0.0, 1.0);
    iv.high = std::clamp(iv.high - bias, 0.0, 1.0);
    iv.low = std::min(iv.low, value);
    iv.high = std::max(iv.high, value);
    return iv;
}

}  // namespace

Estimate tvd_estimate(const std::vector<DecodedSample> &samples, const Distribution &ideal,
                      const BootstrapOptions &opts) {
    Distribution emp = empirical_distribution(samples);
    long long total = static_cast<long long>(pooled_words(samples).size());
    std::vector<std::string> keys;
    std::vector<double> p, q;
    std::set<std::string> all;
    for (auto &[k, v] : emp) {
        all.insert(k);
    }
    for (auto &[k, v] : ideal) {
        all.insert(k);
    }
    for (const auto &k : all) {
        keys.push_back(k);
        p.push_back(emp.count(k) ? emp.at(k) : 0.0);
        q.push_back(ideal.count(k) ? ideal.at(k) : 0.0);
    }
    Estimate e;
    e.value = tvd(emp, ideal);
    auto v = bootstrap(opts, [&](std::mt19937_64 &g) {
        auto counts = multinomial(g, total, p);
        double s = 0;
        for (size_t i = 0; i < counts.size(); i++) {
            s += std::abs(static_cast<double>(counts[i]) / static_cast<double>(total) - q[i]);
        }
        return s / 2;
    });
    e.ci68 = corrected_interval(std::move(v), e.value);
    return e;
}

Estimate error_rate(const std::vector<DecodedSample> &samples, const std::string &expected,
                    const BootstrapOptions &opts) {
    auto words = pooled_words(samples);
    long long n = static_cast<long long>(words.size());
    long long hits = std::count(words.begin(), words.end(), expected);
    double phit = static_cast<double>(hits) / static_cast<double>(n);
    Estimate e;
    e.value = 1 - phit;
    auto v = bootstrap(opts, [&](std::mt19937_64 &g) {
        std::binomial_distribution<long long> bin(n, phit);
        return 1 - static_cast<double>(bin(g)) / static_cast<double>(n);
    });
    e.ci68 = corrected_interval(std::move(v), e.value);
    return e;
}

MetricReport metric_report(const std::vector<DecodedSample> &samples, const Distribution &ideal,
                           const BootstrapOptions &opts) {
    MetricReport m;
    m.shots = samples.size();
    std::map<std::string, uint64_t> counts;
    for (const auto &s : samples) {
        if (s.accepted) {
            m.accepted++;
        } else {
            counts[reason_name(s.reason)]++;
        }
    }
    for (DiscardReason r : {DiscardReason::PrepFlag, DiscardReason::Loss, DiscardReason::OutOfCodespace,
                            DiscardReason::LduFlag}) {
        m.discard_breakdown[reason_name(r)] = 0;
    }
    double total = static_cast<double>(std::max<uint64_t>(1, m.shots));
    for (auto &[k, v] : counts) {
        m.discard_breakdown[k] = static_cast<double>(v) / total;
    }
    m.yield = static_cast<double>(m.accepted) / total;
    double nan = std::numeric_limits<double>::quiet_NaN();
    m.tvd = {nan, {nan, nan}};
    if (m.accepted == 0) {
        return m;
    }
    m.tvd = tvd_estimate(samples, ideal, opts);
    if (ideal.size() == 1 && std::abs(ideal.begin()->second - 1) < 1e-12) {
        m.error_rate = error_rate(samples, ideal.begin()->first, opts);
    }
    return m;
}

const char *status_name(ThresholdStatus s) {
    switch (s) {
        case ThresholdStatus::Found:
            return "found";
        case ThresholdStatus::OpenEnded:
            return "open_ended";
        case ThresholdStatus::Indeterminate:
            return "indeterminate";
    }
    return "?";
}

Pseudothreshold pseudothreshold(const std::vector<CurvePoint> &enc_in,
                                const std::vector<CurvePoint> &unenc_in) {
    if (enc_in.size() != unenc_in.size()) {
        throw ConfigError("pseudothreshold: curves use different alpha grids");
    }
    for (size_t i = 0; i < enc_in.size(); i++) {
        if (enc_in[i].alpha != unenc_in[i].alpha || (i > 0 && !(enc_in[i].alpha > enc_in[i - 1].alpha))) {
            throw ConfigError("pseudothreshold: alpha grids must match and increase");
        }
    }
    // Points where either metric is undefined (no accepted samples) are skipped.
    std::vector<CurvePoint> enc, unenc;
    for (size_t i = 0; i < enc_in.size(); i++) {
        if (std::isfinite(enc_in[i].metric.value) && std::isfinite(unenc_in[i].metric.value)) {
            enc.push_back(enc_in[i]);
            unenc.push_back(unenc_in[i]);
        }
    }
    Pseudothreshold out;
    size_t n = enc.size();
    if (n < 2) {
        return out;
    }
    auto gap = [&](size_t i) { return enc[i].metric.value - unenc[i].metric.value; };
    auto ci_gap = [&](size_t i) { return enc[i].metric.ci68.high - unenc[i].metric.ci68.low; };
    auto lerp = [&](size_t i, double g0, double g1) {
        double t = g0 == g1 ? 0.0 : -g0 / (g1 - g0);
        return enc[i - 1].alpha + std::clamp(t, 0.0, 1.0) * (enc[i].alpha - enc[i - 1].alpha);
    };
    // Sustained crossing: first index from which the encoded metric stays at or above the
    // unencoded one through the end of the grid.
    if (gap(n - 1) < 0) {
        out.status = ThresholdStatus::OpenEnded;
        size_t j = n - 1;
        while (j > 0 && ci_gap(j - 1) >= 0 && ci_gap(j) >= 0) {
            j--;
        }
        out.low = ci_gap(n - 1) >= 0 ? (j == 0 ? enc[0].alpha : lerp(j, ci_gap(j - 1), ci_gap(j)))
                                     : enc.back().alpha;
        out.high = std::numeric_limits<double>::infinity();
        return out;
    }
    size_t c = n - 1;
    while (c > 0 && gap(c - 1) >= 0) {
        c--;
    }
    out.status = ThresholdStatus::Found;
    out.high = c == 0 ? enc[0].alpha : lerp(c, gap(c - 1), gap(c));
    // Start of the stretch of overlapping intervals that runs into the crossing.
    size_t j = c;
    while (j > 0 && ci_gap(j - 1) >= 0) {
        j--;
    }
    out.low = j == 0 ? enc[0].alpha : lerp(j, ci_gap(j - 1), ci_gap(j));
    out.low = std::min(out.low, out.high);
    return out;
}

}  // namespace mqec
