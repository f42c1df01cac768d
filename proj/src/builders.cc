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

#include "mqec/builders.h"

#include <algorithm>
#include <random>
#include <set>

#include "mqec/compiler.h"
#include "mqec/errors.h"
#include "mqec/statevector.h"

namespace mqec {

namespace {

const std::vector<std::pair<Family, const char *>> kFamilies = {
    {Family::ShorUnencoded, "shor_unencoded"},
    {Family::ShorTwoRow, "shor_two_row"},
    {Family::ShorThreeRow, "shor_three_row"},
    {Family::ShorTwoRowLDU, "shor_two_row_ldu"},
    {Family::LadderOutsideIn, "ladder_outside_in"},
    {Family::LadderConstantDepth, "ladder_constant_depth"},
    {Family::MHCStatePrep, "mhc_prep"},
};

void cx(Circuit &c, int a, int b) {
    add_gate(c, GateKind::CX, {a, b});
}

void measure_all(Circuit &c) {
    std::vector<int> all(c.num_qubits);
    for (int q = 0; q < c.num_qubits; q++) {
        all[q] = q;
    }
    add_gate(c, GateKind::Measure, all);
}

// Logical H on both labels of a patch, i.e. the transversal physical H.
void patch_h(Circuit &c, int p) {
    add_gate(c, GateKind::H, {2 * p});
    add_gate(c, GateKind::H, {2 * p + 1});
    add_gate(c, GateKind::SWAP, {2 * p, 2 * p + 1});
}

// Logical CX between patches, label by label.
void patch_cx(Circuit &c, int pc, int pt) {
    cx(c, 2 * pc, 2 * pt);
    cx(c, 2 * pc + 1, 2 * pt + 1);
}

void check_valid(const Circuit &c, const char *what) {
    auto bad = validate(c);
    if (!bad.empty()) {
        throw StructuralError(std::string(what) + ": " + bad.front());
    }
}

Built finish(Circuit logical) {
    check_valid(logical, "builder logical circuit");
    Built b;
    b.logical = logical;
    b.physical = encode(logical);
    check_valid(b.physical, "builder physical circuit");
    b.ideal = logical_distribution(logical);
    return b;
}

Circuit shor_logical(ShorVariant v) {
    switch (v) {
        case ShorVariant::Unencoded: {
            Circuit c = make_logical("shor_unencoded", 3);
            c.plan.encoded = false;
            c.plan.sites = {{3, 2}, {3, 1}, {3, 3}};
            add_gate(c, GateKind::H, {0});
            cx(c, 0, 1);
            cx(c, 0, 2);
            add_gate(c, GateKind::H, {0});
            measure_all(c);
            c.readout.words = {{0, 1, 2}};
            return c;
        }
        case ShorVariant::TwoRow:
        case ShorVariant::TwoRowLDU: {
            Circuit c = make_logical("shor_two_row", 4);
            c.plan.encoded = true;
            c.plan.patch_rows = {2, 3};
            c.plan.patch_prep = {PatchPrep::Flagged00, PatchPrep::Bell0Plus};
            add_gate(c, GateKind::H, {3});
            patch_h(c, 0);
            add_gate(c, GateKind::CZ, {0, 1});
            cx(c, 0, 2);
            cx(c, 1, 3);
            patch_h(c, 0);
            measure_all(c);
            c.readout.words = {{1, 0, 2}};
            return c;
        }
        case ShorVariant::ThreeRow: {
            Circuit c = make_logical("shor_three_row", 6);
            c.plan.encoded = true;
            c.plan.patch_rows = {2, 3, 4};
            c.plan.patch_prep = {PatchPrep::Flagged00, PatchPrep::FusedPlusPlus, PatchPrep::Flagged00};
            add_gate(c, GateKind::H, {2});
            add_gate(c, GateKind::H, {3});
            patch_cx(c, 1, 0);
            patch_cx(c, 1, 2);
            patch_h(c, 1);
            measure_all(c);
            c.readout.words = {{3, 0, 4}, {2, 1, 5}};
            return c;
        }
    }
    throw ConfigError("build_shor: unknown variant");
}

bool bit_set(const std::string &bits, size_t i) {
    return i < bits.size() && bits[i] == '1';
}

void check_bits(const std::string &bits, size_t n, const char *what) {
    if (bits.size() != n) {
        throw ConfigError(std::string(what) + ": initial_bits has length " + std::to_string(bits.size()) +
                          ", expected " + std::to_string(n));
    }
    for (char ch : bits) {
        if (ch != '0' && ch != '1') {
            throw ConfigError(std::string(what) + ": initial_bits must be a 0/1 string");
        }
    }
}

// Affine GF(2) forms over variable bits, one uint64 word; bit 63 is the constant.
using Form = uint64_t;

// Builds the corrections mapping final data values to the outside-in reference, or throws.
std::vector<Gate> derive_ladder_corrections(const Circuit &c, const std::vector<int> &data,
                                            const std::vector<int> &ancilla) {
    int n = c.num_qubits;
    std::vector<Form> v(n, 0);
    // Variables: each data qubit's input value, then each ancilla's random X-basis bit.
    std::map<int, int> var;
    for (int q : data) {
        int id = static_cast<int>(var.size());
        var[q] = id;
        v[q] = Form(1) << id;
    }
    for (const Gate &g : c.gates) {
        if (g.kind == GateKind::H) {
            int q = g.targets[0];
            if (!var.count(q)) {
                int id = static_cast<int>(var.size());
                var[q] = id;
                v[q] = Form(1) << id;
            }
        } else if (g.kind == GateKind::CX) {
            v[g.targets[1]] ^= v[g.targets[0]];
        } else if (g.kind == GateKind::X) {
            // Input preparation: absorbed into the data variables.
        } else if (g.kind != GateKind::Measure && g.kind != GateKind::SWAP) {
            throw StructuralError("ladder correction: unexpected gate");
        }
    }
    if (var.size() > 62) {
        throw CapacityError("ladder correction: too many variables");
    }
    // Reference over data inputs.
    int nd = static_cast<int>(data.size());
    std::vector<Form> want(nd);
    for (int i = 0; i < nd; i++) {
        want[i] = Form(1) << var[data[i]];
    }
    for (int i = 2; i < nd; i++) {
        want[i] ^= want[i - 2];
    }
    want[nd - 1] ^= want[nd - 2];

    // Gaussian elimination over ancilla measurement forms.
    struct Row {
        Form f;
        uint64_t combo;
    };
    std::vector<Row> basis;
    for (size_t k = 0; k < ancilla.size(); k++) {
        Row r{v[ancilla[k]], uint64_t(1) << k};
        for (auto &b : basis) {
            if (r.f & (b.f & -b.f)) {
                r.f ^= b.f;
                r.combo ^= b.combo;
            }
        }
        if (r.f) {
            for (auto &b : basis) {
                if (b.f & (r.f & -r.f)) {
                    b.f ^= r.f;
                    b.combo ^= r.combo;
                }
            }
            basis.push_back(r);
        }
    }
    std::vector<Gate> out;
    for (int i = 0; i < nd; i++) {
        Form diff = v[data[i]] ^ want[i];
        uint64_t combo = 0;
        for (auto &b : basis) {
            if (diff & (b.f & -b.f)) {
                diff ^= b.f;
                combo ^= b.combo;
            }
        }
        if (diff) {
            throw StructuralError("ladder correction: data qubit " + std::to_string(data[i]) +
                                  " cannot be corrected from ancilla readouts");
        }
        if (combo) {
            Gate g;
            g.kind = GateKind::ClassicalCorrection;
            g.targets = {data[i]};
            for (size_t k = 0; k < ancilla.size(); k++) {
                if (combo >> k & 1) {
                    g.targets.push_back(ancilla[k]);
                }
            }
            out.push_back(g);
        }
    }
    return out;
}

}  // namespace

const char *family_name(Family f) {
    for (auto &[k, name] : kFamilies) {
        if (k == f) {
            return name;
        }
    }
    return "?";
}

Family family_from_name(const std::string &name) {
    for (auto &[k, n] : kFamilies) {
        if (name == n) {
            return k;
        }
    }
    throw ConfigError("unknown experiment family '" + name + "'");
}

Built build_shor(ShorVariant v) {
    Built b = finish(shor_logical(v));
    if (v == ShorVariant::TwoRowLDU) {
        b.logical.name = "shor_two_row_ldu";
        const Circuit &p = b.physical;
        const auto &upper = p.readout.patches[0].data;
        int last_h = -1;
        for (size_t i = 0; i < p.gates.size(); i++) {
            const Gate &g = p.gates[i];
            if (g.kind == GateKind::H && std::count(upper.begin(), upper.end(), g.targets[0])) {
                last_h = static_cast<int>(i);
            }
        }
        // The lower patch is watched right after the transversal CX, in the target's X frame, so both
        // units share the pulse that precedes the final Hadamard round.
        std::vector<int> up(upper.begin(), upper.end());
        std::vector<int> low(p.readout.patches[1].data.begin(), p.readout.patches[1].data.end());
        size_t at = static_cast<size_t>(last_h - 3);
        Circuit c = insert_ldus(p, up, at, LduFrame::Z);
        b.physical = insert_ldus(c, low, at + up.size(), LduFrame::X);
        b.physical.name = "shor_two_row_ldu";
    }
    return b;
}

int ladder_rows(int n_logical) {
    return n_logical / 2;
}

bool ladder_row_is_ancilla(int row, int rows) {
    return row % 2 == 1 && row != rows - 1;
}

std::vector<int> ladder_data_qubits(int n_logical, bool constant_depth) {
    std::vector<int> out;
    int rows = ladder_rows(n_logical);
    for (int r = 0; r < rows; r++) {
        if (!constant_depth || !ladder_row_is_ancilla(r, rows)) {
            out.push_back(2 * r);
            out.push_back(2 * r + 1);
        }
    }
    return out;
}

std::string outside_in_reference(const std::string &data_bits) {
    std::string s = data_bits;
    size_t n = s.size();
    if (n < 2 || n % 2) {
        throw ConfigError("outside_in_reference: need an even number of bits");
    }
    for (size_t i = 2; i < n; i++) {
        s[i] = static_cast<char>('0' + ((s[i] - '0') ^ (s[i - 2] - '0')));
    }
    s[n - 1] = static_cast<char>('0' + ((s[n - 1] - '0') ^ (s[n - 2] - '0')));
    return s;
}

std::vector<std::string> random_ladder_inputs(int n_logical, int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    int rows = ladder_rows(n_logical);
    std::vector<std::string> out;
    for (int k = 0; k < count; k++) {
        std::string s(n_logical, '0');
        for (int q = 0; q < n_logical; q++) {
            uint64_t bit = rng() >> 63;
            if (!ladder_row_is_ancilla(q / 2, rows)) {
                s[q] = bit ? '1' : '0';
            }
        }
        out.push_back(s);
    }
    return out;
}

Built build_ladder(const ExperimentSpec &spec) {
    bool cd = spec.family == Family::LadderConstantDepth;
    if (!cd && spec.family != Family::LadderOutsideIn) {
        throw ConfigError("build_ladder: not a ladder family");
    }
    int n = spec.n_logical;
    if (n < 4 || n % 2) {
        throw ConfigError("build_ladder: n_logical must be even and at least 4, got " + std::to_string(n));
    }
    check_bits(spec.initial_bits, n, "build_ladder");
    int rows = ladder_rows(n);
    Circuit c = make_logical(std::string(cd ? "ladder_constant_depth_" : "ladder_outside_in_") + std::to_string(n) +
                                 (spec.encoded ? "_encoded" : ""),
                             n);
    c.plan.encoded = spec.encoded;
    c.plan.grid_rows = std::max(7, rows);
    std::vector<int> anc_rows;
    for (int r = 0; r < rows; r++) {
        bool anc = cd && ladder_row_is_ancilla(r, rows);
        if (anc) {
            anc_rows.push_back(r);
        }
        if (spec.encoded) {
            c.plan.patch_rows.push_back(r);
            c.plan.patch_prep.push_back(PatchPrep::Flagged00);
        } else {
            c.plan.sites.push_back({r, 1});
            c.plan.sites.push_back({r, 2});
        }
        c.plan.logical_roles[2 * r] = c.plan.logical_roles[2 * r + 1] = anc ? Role::Ancilla : Role::Data;
    }
    auto data = ladder_data_qubits(n, cd);
    std::vector<int> data_rows;
    for (size_t i = 0; i < data.size(); i += 2) {
        data_rows.push_back(data[i] / 2);
    }
    for (int q : data) {
        if (bit_set(spec.initial_bits, q)) {
            add_gate(c, GateKind::X, {q});
        }
    }
    if (cd) {
        for (int r : anc_rows) {
            if (spec.encoded) {
                patch_h(c, r);
            } else {
                add_gate(c, GateKind::H, {2 * r});
                add_gate(c, GateKind::H, {2 * r + 1});
            }
        }
        for (int r : anc_rows) {
            patch_cx(c, r, r + 1);
        }
        for (int r : anc_rows) {
            patch_cx(c, r - 1, r);
        }
        if (rows >= 2 && !ladder_row_is_ancilla(rows - 2, rows)) {
            patch_cx(c, rows - 2, rows - 1);
        }
    } else {
        for (size_t k = 0; k + 1 < data_rows.size(); k++) {
            patch_cx(c, data_rows[k], data_rows[k + 1]);
        }
    }
    cx(c, 2 * (rows - 1), 2 * (rows - 1) + 1);
    measure_all(c);
    std::vector<int> anc;
    for (int r : anc_rows) {
        anc.push_back(2 * r);
        anc.push_back(2 * r + 1);
    }
    // The symbolic derivation treats the ancilla H of patch_h as the random source and ignores SWAP.
    Circuit sym = c;
    sym.gates.erase(std::remove_if(sym.gates.begin(), sym.gates.end(),
                                   [](const Gate &g) { return g.kind == GateKind::SWAP; }),
                    sym.gates.end());
    for (auto &g : derive_ladder_corrections(sym, data, anc)) {
        c.gates.push_back(g);
    }
    c.readout.words = {data};
    Built b = finish(c);
    std::string in_bits;
    for (int q : data) {
        in_bits.push_back(spec.initial_bits[q]);
    }
    Distribution expect{{outside_in_reference(in_bits), 1.0}};
    for (auto &[k, p] : b.ideal) {
        if (p > 1e-9 && !expect.count(k)) {
            throw StructuralError("build_ladder: ladder output disagrees with the outside-in reference");
        }
    }
    return b;
}

Built build_mhc_prep(const std::string &bits, bool encoded) {
    check_bits(bits, 4, "build_mhc_prep");
    Built b;
    if (!encoded) {
        Circuit c = make_logical("mhc_unencoded", 4);
        c.plan.sites = {{3, 1}, {3, 2}, {3, 3}, {3, 4}};
        for (int k = 0; k < 4; k++) {
            if (bits[k] == '1') {
                add_gate(c, GateKind::X, {k});
            }
        }
        measure_all(c);
        c.readout.words = {{0, 1, 2, 3}};
        return finish(c);
    }
    // Level-1 patches A..E at rows 1..5; E acts as the level-2 flag.
    enum { A, B, C, D, E };
    Circuit c = make_logical("mhc_prep", 10);
    c.plan.encoded = true;
    c.plan.patch_rows = {1, 2, 3, 4, 5};
    c.plan.patch_prep.assign(5, PatchPrep::Flagged00);
    patch_h(c, B);
    patch_cx(c, B, C);
    patch_cx(c, B, A);
    patch_cx(c, C, D);
    patch_cx(c, D, E);
    Gate mv;
    mv.kind = GateKind::Move;
    mv.targets = {2 * E, 2 * E + 1};
    mv.drow = -5;
    c.gates.push_back(mv);
    patch_cx(c, A, E);
    // Level-2 logical X for each set bit, net parity per level-1 qubit.
    static const std::vector<std::vector<int>> kPatterns = {
        {2 * B, 2 * B + 1, 2 * C, 2 * C + 1},
        {2 * B, 2 * B + 1, 2 * D, 2 * D + 1},
        {2 * B, 2 * C},
        {2 * B, 2 * D},
    };
    std::vector<int> flip(10, 0);
    for (int k = 0; k < 4; k++) {
        if (bits[k] == '1') {
            for (int q : kPatterns[k]) {
                flip[q] ^= 1;
            }
        }
    }
    for (int q = 0; q < 10; q++) {
        if (flip[q]) {
            add_gate(c, GateKind::X, {q});
        }
    }
    measure_all(c);
    check_valid(c, "build_mhc_prep logical circuit");
    b.logical = c;
    b.physical = encode(c);
    Readout &r = b.physical.readout;
    r.logical.assign(6, LogicalSource{});
    for (int k = 0; k < 4; k++) {
        r.logical[k].kind = SourceKind::Cube;
        r.logical[k].index = k;
        r.logical[k].blocks = {A, B, C, D};
    }
    for (int j = 0; j < 2; j++) {
        r.logical[4 + j].kind = SourceKind::Patch;
        r.logical[4 + j].patch = E;
        r.logical[4 + j].index = j;
    }
    r.words = {{0, 1, 2, 3}};
    r.logical_flags = {4, 5};
    check_valid(b.physical, "build_mhc_prep physical circuit");
    b.ideal = {{bits, 1.0}};
    return b;
}

Built build(const ExperimentSpec &spec) {
    switch (spec.family) {
        case Family::ShorUnencoded:
            return build_shor(ShorVariant::Unencoded);
        case Family::ShorTwoRow:
            return build_shor(ShorVariant::TwoRow);
        case Family::ShorThreeRow:
            return build_shor(ShorVariant::ThreeRow);
        case Family::ShorTwoRowLDU:
            return build_shor(ShorVariant::TwoRowLDU);
        case Family::LadderOutsideIn:
        case Family::LadderConstantDepth:
            return build_ladder(spec);
        case Family::MHCStatePrep:
            return build_mhc_prep(spec.initial_bits, spec.encoded);
    }
    throw ConfigError("build: unknown family");
}

Circuit insert_ldus(const Circuit &in, const std::vector<int> &targets, size_t position, LduFrame frame) {
    if (in.tier != Tier::Physical) {
        throw UnsupportedError("insert_ldus: expected a physical-tier circuit");
    }
    if (position > in.gates.size()) {
        throw ConfigError("insert_ldus: position past the end of the circuit");
    }
    // Every site an atom ever visits, and each atom's site at the insertion point.
    std::set<Site> taken(in.grid.atom_sites.begin(), in.grid.atom_sites.end());
    std::vector<Site> pos = in.grid.atom_sites, at_insert;
    for (size_t i = 0; i <= in.gates.size(); i++) {
        if (i == position) {
            at_insert = pos;
        }
        if (i == in.gates.size()) {
            break;
        }
        const Gate &g = in.gates[i];
        if (g.kind == GateKind::Move) {
            for (int t : g.targets) {
                pos[t].row += g.drow;
                pos[t].col += g.dcol;
                taken.insert(pos[t]);
            }
        }
    }
    Circuit c = in;
    std::vector<Gate> preps, unit;
    std::vector<int> flags;
    for (int t : targets) {
        if (t < 0 || t >= in.num_qubits || in.roles[t] != Role::Data) {
            throw ConfigError("insert_ldus: target " + std::to_string(t) + " is not a data atom");
        }
        Site s = at_insert[t];
        Site chosen{-1, -1};
        for (int dr : {-1, 1}) {
            Site cand{s.row + dr, s.col};
            if (cand.row >= 0 && cand.row < c.grid.rows && !taken.count(cand)) {
                chosen = cand;
                break;
            }
        }
        if (chosen.row < 0) {
            throw RoutingError("insert_ldus: no free adjacent site for atom " + std::to_string(t));
        }
        taken.insert(chosen);
        int f = c.num_qubits++;
        c.grid.atom_sites.push_back(chosen);
        c.roles.push_back(Role::LduFlag);
        flags.push_back(f);
        c.readout.ldu_flags.push_back({f, t});
        Gate g;
        g.kind = GateKind::Prep;
        g.targets = {f};
        preps.push_back(g);
        auto one = [&](GateKind k, std::vector<int> ts) {
            Gate u;
            u.kind = k;
            u.targets = std::move(ts);
            unit.push_back(u);
        };
        bool xf = frame == LduFrame::X;
        one(GateKind::X, {f});
        if (xf) {
            one(GateKind::H, {t});
        }
        one(GateKind::CX, {t, f});
        one(GateKind::X, {t});
        one(GateKind::CX, {t, f});
        one(GateKind::X, {t});
        if (xf) {
            one(GateKind::H, {t});
        }
    }
    c.gates.clear();
    size_t nprep = 0;
    while (nprep < in.gates.size() && in.gates[nprep].kind == GateKind::Prep && nprep < position) {
        nprep++;
    }
    c.gates.insert(c.gates.end(), in.gates.begin(), in.gates.begin() + nprep);
    c.gates.insert(c.gates.end(), preps.begin(), preps.end());
    c.gates.insert(c.gates.end(), in.gates.begin() + nprep, in.gates.begin() + position);
    c.gates.insert(c.gates.end(), unit.begin(), unit.end());
    c.gates.insert(c.gates.end(), in.gates.begin() + position, in.gates.end());
    bool appended = false;
    for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
        if (it->kind == GateKind::Measure) {
            it->targets.insert(it->targets.end(), flags.begin(), flags.end());
            appended = true;
            break;
        }
    }
    if (!appended) {
        Gate m;
        m.kind = GateKind::Measure;
        m.targets = flags;
        c.gates.push_back(m);
    }
    c.moments.clear();
    return c;
}

Distribution logical_distribution(const Circuit &logical) {
    auto raw = statevector_oracle(logical);
    Distribution d;
    const auto &words = logical.readout.words;
    if (words.empty()) {
        throw StructuralError("logical_distribution: circuit defines no readout words");
    }
    for (const auto &[bits, p] : raw) {
        for (const auto &w : words) {
            std::string key;
            for (int bit : w) {
                const LogicalSource &s = logical.readout.logical.at(bit);
                key.push_back(bits.at(s.atom));
            }
            d[key] += p / static_cast<double>(words.size());
        }
    }
    return d;
}

}  // namespace mqec
