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

#include "mqec/circuit.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "mqec/errors.h"

namespace mqec {

namespace {

struct KindName {
    GateKind kind;
    const char *name;
};

const KindName kKindNames[] = {
    {GateKind::Prep, "PREP"}, {GateKind::CZ, "CZ"},     {GateKind::GR, "GR"},
    {GateKind::Rz, "RZ"},     {GateKind::Move, "MOVE"}, {GateKind::Measure, "M"},
    {GateKind::CX, "CX"},     {GateKind::H, "H"},       {GateKind::X, "X"},
    {GateKind::Y, "Y"},       {GateKind::Z, "Z"},       {GateKind::S, "S"},
    {GateKind::Sdg, "S_DAG"}, {GateKind::SWAP, "SWAP"}, {GateKind::ClassicalCorrection, "CC"},
};

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ConfigError("bad number '" + s + "'");
    }
    return v;
}

int arity(GateKind k) {
    switch (k) {
        case GateKind::CZ:
        case GateKind::CX:
        case GateKind::SWAP:
            return 2;
        case GateKind::GR:
            return 0;
        case GateKind::Move:
        case GateKind::Measure:
        case GateKind::ClassicalCorrection:
            return -1;
        default:
            return 1;
    }
}

}  // namespace

const char *gate_name(GateKind k) {
    for (const auto &kn : kKindNames) {
        if (kn.kind == k) {
            return kn.name;
        }
    }
    return "?";
}

GateKind gate_from_name(const std::string &name) {
    for (const auto &kn : kKindNames) {
        if (name == kn.name) {
            return kn.kind;
        }
    }
    throw ConfigError("unknown gate '" + name + "'");
}

bool is_native(GateKind k) {
    switch (k) {
        case GateKind::Prep:
        case GateKind::CZ:
        case GateKind::GR:
        case GateKind::Rz:
        case GateKind::Move:
        case GateKind::Measure:
        case GateKind::ClassicalCorrection:
            return true;
        default:
            return false;
    }
}

bool is_single_qubit_unitary(GateKind k) {
    switch (k) {
        case GateKind::Rz:
        case GateKind::H:
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
            return true;
        default:
            return false;
    }
}

const char *role_name(Role r) {
    switch (r) {
        case Role::Data:
            return "data";
        case Role::PrepFlag:
            return "prep_flag";
        case Role::LduFlag:
            return "ldu_flag";
        case Role::Ancilla:
            return "ancilla";
        case Role::Unused:
            return "unused";
    }
    return "?";
}

Role role_from_name(const std::string &name) {
    for (Role r : {Role::Data, Role::PrepFlag, Role::LduFlag, Role::Ancilla, Role::Unused}) {
        if (name == role_name(r)) {
            return r;
        }
    }
    throw ConfigError("unknown role '" + name + "'");
}

const char *prep_name(PatchPrep p) {
    switch (p) {
        case PatchPrep::Flagged00:
            return "flagged00";
        case PatchPrep::Bell0Plus:
            return "bell0plus";
        case PatchPrep::FusedPlusPlus:
            return "fusedplusplus";
    }
    return "?";
}

PatchPrep prep_from_name(const std::string &name) {
    for (PatchPrep p : {PatchPrep::Flagged00, PatchPrep::Bell0Plus, PatchPrep::FusedPlusPlus}) {
        if (name == prep_name(p)) {
            return p;
        }
    }
    throw ConfigError("unknown patch prep '" + name + "'");
}

bool Gate::operator==(const Gate &o) const {
    return kind == o.kind && targets == o.targets && atom_sources == o.atom_sources && theta == o.theta &&
           phi == o.phi && drow == o.drow && dcol == o.dcol;
}

bool LogicalSource::operator==(const LogicalSource &o) const {
    return kind == o.kind && atom == o.atom && patch == o.patch && index == o.index && blocks == o.blocks;
}

bool Readout::operator==(const Readout &o) const {
    return logical == o.logical && words == o.words && patches == o.patches && prep_flags == o.prep_flags &&
           ldu_flags == o.ldu_flags && logical_flags == o.logical_flags;
}

bool EncodingPlan::operator==(const EncodingPlan &o) const {
    return encoded == o.encoded && patch_rows == o.patch_rows && patch_prep == o.patch_prep && sites == o.sites &&
           logical_roles == o.logical_roles && grid_rows == o.grid_rows && grid_cols == o.grid_cols;
}

bool Circuit::operator==(const Circuit &o) const {
    return name == o.name && tier == o.tier && num_qubits == o.num_qubits && grid.rows == o.grid.rows &&
           grid.cols == o.grid.cols && grid.atom_sites == o.grid.atom_sites && roles == o.roles && gates == o.gates &&
           moments == o.moments && readout == o.readout && plan == o.plan;
}

std::vector<int> logical_bit_atoms(const Readout &r, int bit) {
    std::vector<int> out;
    if (bit < 0 || bit >= static_cast<int>(r.logical.size())) {
        return out;
    }
    const LogicalSource &s = r.logical[bit];
    auto add_patch = [&](int p) {
        if (p >= 0 && p < static_cast<int>(r.patches.size())) {
            for (int a : r.patches[p].data) {
                out.push_back(a);
            }
        }
    };
    switch (s.kind) {
        case SourceKind::Atom:
            out.push_back(s.atom);
            break;
        case SourceKind::Patch:
            add_patch(s.patch);
            break;
        case SourceKind::Cube:
            for (int p : s.blocks) {
                add_patch(p);
            }
            break;
    }
    return out;
}

std::vector<int> gate_operands(const Circuit &c, const Gate &g) {
    if (g.kind == GateKind::GR) {
        std::vector<int> all(c.num_qubits);
        for (int q = 0; q < c.num_qubits; q++) {
            all[q] = q;
        }
        return all;
    }
    if (g.kind != GateKind::ClassicalCorrection) {
        return g.targets;
    }
    std::set<int> ops;
    if (c.tier == Tier::Logical) {
        ops.insert(g.targets.begin(), g.targets.end());
    } else {
        for (int bit : g.targets) {
            for (int a : logical_bit_atoms(c.readout, bit)) {
                ops.insert(a);
            }
        }
    }
    ops.insert(g.atom_sources.begin(), g.atom_sources.end());
    return {ops.begin(), ops.end()};
}

std::vector<std::string> validate(const Circuit &c) {
    std::vector<std::string> v;
    int n = c.num_qubits;
    bool phys = c.tier == Tier::Physical;
    auto where = [](size_t i, const Gate &g) {
        return "gate " + std::to_string(i) + " (" + gate_name(g.kind) + "): ";
    };
    if (n < 0) {
        v.push_back("negative qubit count");
        return v;
    }
    std::vector<Site> pos;
    if (phys) {
        if (static_cast<int>(c.grid.atom_sites.size()) != n) {
            v.push_back("grid lists " + std::to_string(c.grid.atom_sites.size()) + " sites for " + std::to_string(n) +
                        " atoms");
        } else {
            pos = c.grid.atom_sites;
            std::set<Site> seen;
            for (int a = 0; a < n; a++) {
                const Site &s = pos[a];
                if (s.row < 0 || s.col < 0 || s.row >= c.grid.rows || s.col >= c.grid.cols) {
                    v.push_back("atom " + std::to_string(a) + " placed outside the grid");
                }
                if (!seen.insert(s).second) {
                    v.push_back("collision: two atoms start on site (" + std::to_string(s.row) + "," +
                                std::to_string(s.col) + ")");
                }
            }
        }
        if (static_cast<int>(c.roles.size()) != n) {
            v.push_back("roles list has " + std::to_string(c.roles.size()) + " entries for " + std::to_string(n) +
                        " atoms");
        }
    }
    bool have_pos = phys && static_cast<int>(pos.size()) == n;
    std::vector<char> measured(n, 0);
    for (size_t i = 0; i < c.gates.size(); i++) {
        const Gate &g = c.gates[i];
        int ar = arity(g.kind);
        bool range_ok = true;
        for (int t : g.targets) {
            int limit = (g.kind == GateKind::ClassicalCorrection && phys) ? static_cast<int>(c.readout.logical.size())
                                                                          : n;
            if (t < 0 || t >= limit) {
                v.push_back(where(i, g) + "operand " + std::to_string(t) + " out of range");
                range_ok = false;
            }
        }
        for (int a : g.atom_sources) {
            if (a < 0 || a >= n) {
                v.push_back(where(i, g) + "atom source out of range");
                range_ok = false;
            }
        }
        if (!range_ok) {
            continue;
        }
        if (ar >= 0 && static_cast<int>(g.targets.size()) != ar) {
            v.push_back(where(i, g) + "arity violation: expected " + std::to_string(ar) + " operands, got " +
                        std::to_string(g.targets.size()));
            continue;
        }
        if (ar < 0 && g.targets.empty()) {
            v.push_back(where(i, g) + "arity violation: no operands");
            continue;
        }
        if (g.kind != GateKind::ClassicalCorrection) {
            std::set<int> uniq(g.targets.begin(), g.targets.end());
            if (uniq.size() != g.targets.size()) {
                v.push_back(where(i, g) + "arity violation: repeated operand");
                continue;
            }
        }
        if (!phys && (g.kind == GateKind::Prep || g.kind == GateKind::GR || g.kind == GateKind::Rz)) {
            v.push_back(where(i, g) + "physical-only gate in logical tier");
        }
        if (g.kind == GateKind::ClassicalCorrection) {
            std::vector<int> feeders;
            if (phys) {
                for (int bit : g.targets) {
                    for (int a : logical_bit_atoms(c.readout, bit)) {
                        feeders.push_back(a);
                    }
                }
            } else {
                feeders = g.targets;
            }
            feeders.insert(feeders.end(), g.atom_sources.begin(), g.atom_sources.end());
            for (int a : feeders) {
                if (a >= 0 && a < n && !measured[a]) {
                    v.push_back(where(i, g) + "classical correction before source " + std::to_string(a) +
                                " is measured");
                    break;
                }
            }
            continue;
        }
        for (int t : gate_operands(c, g)) {
            if (measured[t] && g.kind != GateKind::GR) {
                v.push_back(where(i, g) + "operand " + std::to_string(t) + " used after measurement");
                break;
            }
        }
        if (g.kind == GateKind::Measure) {
            for (int t : g.targets) {
                measured[t] = 1;
                if (phys && static_cast<int>(c.roles.size()) == n && c.roles[t] == Role::Unused) {
                    v.push_back(where(i, g) + "measured atom " + std::to_string(t) + " has role unused");
                }
            }
        }
        if (!have_pos) {
            continue;
        }
        if (ar == 2) {
            const Site &a = pos[g.targets[0]], &b = pos[g.targets[1]];
            if (std::abs(a.row - b.row) + std::abs(a.col - b.col) != 1) {
                v.push_back(where(i, g) + "atoms " + std::to_string(g.targets[0]) + " and " +
                            std::to_string(g.targets[1]) + " are not adjacent");
            }
        }
        if (g.kind == GateKind::Move) {
            for (int t : g.targets) {
                pos[t].row += g.drow;
                pos[t].col += g.dcol;
                const Site &s = pos[t];
                if (s.row < 0 || s.col < 0 || s.row >= c.grid.rows || s.col >= c.grid.cols) {
                    v.push_back(where(i, g) + "atom " + std::to_string(t) + " moved outside the grid");
                }
            }
            std::set<Site> seen;
            for (int a = 0; a < n; a++) {
                if (!seen.insert(pos[a]).second) {
                    v.push_back(where(i, g) + "collision: two atoms on site (" + std::to_string(pos[a].row) + "," +
                                std::to_string(pos[a].col) + ") after move");
                    break;
                }
            }
        }
    }
    if (!c.moments.empty()) {
        std::vector<int> seen(c.gates.size(), -1);
        for (size_t m = 0; m < c.moments.size(); m++) {
            std::set<int> used;
            bool has_gr = false, has_move = false;
            for (int gi : c.moments[m]) {
                if (gi < 0 || gi >= static_cast<int>(c.gates.size())) {
                    v.push_back("moment " + std::to_string(m) + ": bad gate index");
                    continue;
                }
                if (seen[gi] >= 0) {
                    v.push_back("moment " + std::to_string(m) + ": gate " + std::to_string(gi) + " listed twice");
                }
                seen[gi] = static_cast<int>(m);
                const Gate &g = c.gates[gi];
                has_gr |= g.kind == GateKind::GR;
                has_move |= g.kind == GateKind::Move;
                for (int q : gate_operands(c, g)) {
                    if (!used.insert(q).second) {
                        v.push_back("moment " + std::to_string(m) + ": operand " + std::to_string(q) + " shared");
                        break;
                    }
                }
            }
            if (has_gr && has_move) {
                v.push_back("moment " + std::to_string(m) + ": GR and Move in the same moment");
            }
        }
        std::vector<int> last(n, -1);
        for (size_t gi = 0; gi < c.gates.size(); gi++) {
            if (seen[gi] < 0) {
                v.push_back("gate " + std::to_string(gi) + " missing from moments");
                continue;
            }
            for (int q : gate_operands(c, c.gates[gi])) {
                if (q >= 0 && q < n) {
                    if (seen[gi] <= last[q]) {
                        v.push_back("moments reorder gates on operand " + std::to_string(q));
                    }
                    last[q] = seen[gi];
                }
            }
        }
    }
    return v;
}

std::map<std::string, int> count_gates(const Circuit &c) {
    if (c.tier != Tier::Physical) {
        throw UnsupportedError("count_gates: logical-tier circuit");
    }
    std::map<std::string, int> counts;
    for (const Gate &g : c.gates) {
        if (!is_native(g.kind)) {
            throw UnsupportedError(std::string("count_gates: non-native gate ") + gate_name(g.kind) +
                                   " in physical circuit");
        }
        counts[gate_name(g.kind)]++;
    }
    return counts;
}

Circuit schedule_moments(const Circuit &c) {
    std::vector<int> last(c.num_qubits, -1);
    std::vector<int> moment_of(c.gates.size());
    int depth = 0;
    for (size_t i = 0; i < c.gates.size(); i++) {
        int m = 0;
        auto ops = gate_operands(c, c.gates[i]);
        for (int q : ops) {
            if (q < 0 || q >= c.num_qubits) {
                throw StructuralError("schedule_moments: operand out of range");
            }
            m = std::max(m, last[q] + 1);
        }
        for (int q : ops) {
            last[q] = m;
        }
        moment_of[i] = m;
        depth = std::max(depth, m + 1);
    }
    Circuit out = c;
    out.gates.clear();
    out.moments.assign(depth, {});
    std::vector<std::vector<int>> by_moment(depth);
    for (size_t i = 0; i < c.gates.size(); i++) {
        by_moment[moment_of[i]].push_back(static_cast<int>(i));
    }
    for (int m = 0; m < depth; m++) {
        for (int gi : by_moment[m]) {
            out.moments[m].push_back(static_cast<int>(out.gates.size()));
            out.gates.push_back(c.gates[gi]);
        }
    }
    return out;
}

int two_qubit_depth(const Circuit &c) {
    Circuit s = c.moments.empty() ? schedule_moments(c) : c;
    int depth = 0;
    for (const auto &m : s.moments) {
        for (int gi : m) {
            GateKind k = s.gates[gi].kind;
            if (k == GateKind::CZ || k == GateKind::CX || k == GateKind::SWAP) {
                depth++;
                break;
            }
        }
    }
    return depth;
}

std::string circuit_to_text(const Circuit &c) {
    std::ostringstream o;
    o << "MQEC 1\n";
    o << "name " << (c.name.empty() ? "-" : c.name) << "\n";
    o << "tier " << (c.tier == Tier::Physical ? "physical" : "logical") << "\n";
    o << "qubits " << c.num_qubits << "\n";
    o << "grid " << c.grid.rows << " " << c.grid.cols << "\n";
    for (size_t a = 0; a < c.grid.atom_sites.size(); a++) {
        o << "site " << a << " " << c.grid.atom_sites[a].row << " " << c.grid.atom_sites[a].col << "\n";
    }
    for (size_t a = 0; a < c.roles.size(); a++) {
        o << "role " << a << " " << role_name(c.roles[a]) << "\n";
    }
    const EncodingPlan &p = c.plan;
    o << "plan " << (p.encoded ? 1 : 0) << " " << p.grid_rows << " " << p.grid_cols << "\n";
    for (size_t i = 0; i < p.patch_rows.size(); i++) {
        o << "prow " << i << " " << p.patch_rows[i] << " " << prep_name(p.patch_prep[i]) << "\n";
    }
    for (size_t i = 0; i < p.sites.size(); i++) {
        o << "psite " << i << " " << p.sites[i].row << " " << p.sites[i].col << "\n";
    }
    for (size_t i = 0; i < p.logical_roles.size(); i++) {
        o << "lrole " << i << " " << role_name(p.logical_roles[i]) << "\n";
    }
    const Readout &r = c.readout;
    for (size_t i = 0; i < r.patches.size(); i++) {
        const auto &pi = r.patches[i];
        o << "patch " << i << " " << pi.data[0] << " " << pi.data[1] << " " << pi.data[2] << " " << pi.data[3] << " "
          << pi.flag << "\n";
    }
    for (size_t i = 0; i < r.logical.size(); i++) {
        const auto &s = r.logical[i];
        o << "logical " << i << " ";
        switch (s.kind) {
            case SourceKind::Atom:
                o << "atom " << s.atom;
                break;
            case SourceKind::Patch:
                o << "patch " << s.patch << " " << s.index;
                break;
            case SourceKind::Cube:
                o << "cube " << s.index << " " << s.blocks[0] << " " << s.blocks[1] << " " << s.blocks[2] << " "
                  << s.blocks[3];
                break;
        }
        o << "\n";
    }
    for (const auto &w : r.words) {
        o << "word";
        for (int b : w) {
            o << " " << b;
        }
        o << "\n";
    }
    for (int a : r.prep_flags) {
        o << "prepflag " << a << "\n";
    }
    for (auto [f, t] : r.ldu_flags) {
        o << "ldu " << f << " " << t << "\n";
    }
    for (int b : r.logical_flags) {
        o << "lflag " << b << "\n";
    }
    for (const Gate &g : c.gates) {
        o << gate_name(g.kind);
        if (g.kind == GateKind::GR) {
            o << " " << fmt_double(g.theta) << " " << fmt_double(g.phi);
        } else if (g.kind == GateKind::Rz) {
            o << " " << fmt_double(g.theta);
        } else if (g.kind == GateKind::Move) {
            o << " " << g.drow << " " << g.dcol;
        }
        o << " @";
        for (int t : g.targets) {
            o << " " << t;
        }
        if (g.kind == GateKind::ClassicalCorrection) {
            o << " |";
            for (int a : g.atom_sources) {
                o << " " << a;
            }
        }
        o << "\n";
    }
    for (const auto &m : c.moments) {
        o << "moment";
        for (int gi : m) {
            o << " " << gi;
        }
        o << "\n";
    }
    o << "end\n";
    return o.str();
}

Circuit circuit_from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    Circuit c;
    int line_no = 0;
    bool header = false, ended = false;
    auto fail = [&](const std::string &msg) {
        throw ConfigError("circuit text line " + std::to_string(line_no) + ": " + msg);
    };
    auto need_index = [&](int i, size_t cap) {
        if (i < 0 || static_cast<size_t>(i) > cap) {
            fail("index out of order");
        }
    };
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (!header) {
            if (tag != "MQEC") {
                fail("missing MQEC header");
            }
            header = true;
            continue;
        }
        if (tag == "end") {
            ended = true;
            break;
        }
        if (tag == "name") {
            ls >> c.name;
            if (c.name == "-") {
                c.name.clear();
            }
        } else if (tag == "tier") {
            std::string t;
            ls >> t;
            if (t == "physical") {
                c.tier = Tier::Physical;
            } else if (t == "logical") {
                c.tier = Tier::Logical;
            } else {
                fail("bad tier " + t);
            }
        } else if (tag == "qubits") {
            ls >> c.num_qubits;
        } else if (tag == "grid") {
            ls >> c.grid.rows >> c.grid.cols;
        } else if (tag == "site") {
            int a;
            Site s;
            ls >> a >> s.row >> s.col;
            need_index(a, c.grid.atom_sites.size());
            c.grid.atom_sites.resize(std::max<size_t>(c.grid.atom_sites.size(), a + 1));
            c.grid.atom_sites[a] = s;
        } else if (tag == "role") {
            int a;
            std::string r;
            ls >> a >> r;
            need_index(a, c.roles.size());
            c.roles.resize(std::max<size_t>(c.roles.size(), a + 1));
            c.roles[a] = role_from_name(r);
        } else if (tag == "plan") {
            int enc;
            ls >> enc >> c.plan.grid_rows >> c.plan.grid_cols;
            c.plan.encoded = enc != 0;
        } else if (tag == "prow") {
            int i, row;
            std::string prep;
            ls >> i >> row >> prep;
            need_index(i, c.plan.patch_rows.size());
            c.plan.patch_rows.push_back(row);
            c.plan.patch_prep.push_back(prep_from_name(prep));
        } else if (tag == "psite") {
            int i;
            Site s;
            ls >> i >> s.row >> s.col;
            need_index(i, c.plan.sites.size());
            c.plan.sites.push_back(s);
        } else if (tag == "lrole") {
            int i;
            std::string r;
            ls >> i >> r;
            need_index(i, c.plan.logical_roles.size());
            c.plan.logical_roles.push_back(role_from_name(r));
        } else if (tag == "patch") {
            int i;
            PatchInfo pi;
            ls >> i >> pi.data[0] >> pi.data[1] >> pi.data[2] >> pi.data[3] >> pi.flag;
            need_index(i, c.readout.patches.size());
            c.readout.patches.push_back(pi);
        } else if (tag == "logical") {
            int i;
            std::string kind;
            ls >> i >> kind;
            need_index(i, c.readout.logical.size());
            LogicalSource s;
            if (kind == "atom") {
                s.kind = SourceKind::Atom;
                ls >> s.atom;
            } else if (kind == "patch") {
                s.kind = SourceKind::Patch;
                ls >> s.patch >> s.index;
            } else if (kind == "cube") {
                s.kind = SourceKind::Cube;
                ls >> s.index >> s.blocks[0] >> s.blocks[1] >> s.blocks[2] >> s.blocks[3];
            } else {
                fail("bad logical source kind " + kind);
            }
            c.readout.logical.push_back(s);
        } else if (tag == "word") {
            std::vector<int> w;
            int b;
            while (ls >> b) {
                w.push_back(b);
            }
            c.readout.words.push_back(w);
        } else if (tag == "prepflag") {
            int a;
            ls >> a;
            c.readout.prep_flags.push_back(a);
        } else if (tag == "ldu") {
            int f, t;
            ls >> f >> t;
            c.readout.ldu_flags.push_back({f, t});
        } else if (tag == "lflag") {
            int b;
            ls >> b;
            c.readout.logical_flags.push_back(b);
        } else if (tag == "moment") {
            std::vector<int> m;
            int gi;
            while (ls >> gi) {
                m.push_back(gi);
            }
            c.moments.push_back(m);
        } else {
            Gate g;
            g.kind = gate_from_name(tag);
            std::string tok;
            std::vector<std::string> args;
            while (ls >> tok && tok != "@") {
                args.push_back(tok);
            }
            if (tok != "@") {
                fail("missing '@' operand marker");
            }
            if (g.kind == GateKind::GR) {
                if (args.size() != 2) {
                    fail("GR needs theta and phi");
                }
                g.theta = parse_double(args[0]);
                g.phi = parse_double(args[1]);
            } else if (g.kind == GateKind::Rz) {
                if (args.size() != 1) {
                    fail("RZ needs theta");
                }
                g.theta = parse_double(args[0]);
            } else if (g.kind == GateKind::Move) {
                if (args.size() != 2) {
                    fail("MOVE needs a displacement");
                }
                g.drow = std::stoi(args[0]);
                g.dcol = std::stoi(args[1]);
            } else if (!args.empty()) {
                fail("unexpected gate arguments");
            }
            bool sources = false;
            while (ls >> tok) {
                if (tok == "|") {
                    sources = true;
                    continue;
                }
                int v = std::stoi(tok);
                (sources ? g.atom_sources : g.targets).push_back(v);
            }
            c.gates.push_back(g);
        }
        if (ls.fail() && !ls.eof()) {
            fail("malformed line");
        }
    }
    if (!header) {
        throw ConfigError("circuit text: empty input");
    }
    if (!ended) {
        throw ConfigError("circuit text: missing end marker");
    }
    return c;
}

std::string timeline_text(const Circuit &c) {
    Circuit s = c.moments.empty() ? schedule_moments(c) : c;
    std::ostringstream o;
    for (size_t m = 0; m < s.moments.size(); m++) {
        o << m << ":";
        for (int gi : s.moments[m]) {
            const Gate &g = s.gates[gi];
            o << " " << gate_name(g.kind);
            if (g.kind == GateKind::GR) {
                o << "(" << fmt_double(g.theta) << "," << fmt_double(g.phi) << ")";
            } else if (g.kind == GateKind::Rz) {
                o << "(" << fmt_double(g.theta) << ")";
            } else if (g.kind == GateKind::Move) {
                o << "(" << g.drow << "," << g.dcol << ")";
            }
            if (!g.targets.empty()) {
                o << "[";
                for (size_t k = 0; k < g.targets.size(); k++) {
                    o << (k ? "," : "") << g.targets[k];
                }
                o << "]";
            }
        }
        o << "\n";
    }
    return o.str();
}

uint64_t circuit_hash(const Circuit &c) {
    std::string s = circuit_to_text(c);
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

Circuit make_logical(const std::string &name, int num_qubits) {
    Circuit c;
    c.name = name;
    c.tier = Tier::Logical;
    c.num_qubits = num_qubits;
    c.readout.logical.resize(num_qubits);
    for (int q = 0; q < num_qubits; q++) {
        c.readout.logical[q].kind = SourceKind::Atom;
        c.readout.logical[q].atom = q;
    }
    c.plan.logical_roles.assign(num_qubits, Role::Data);
    return c;
}

void add_gate(Circuit &c, GateKind kind, std::vector<int> targets) {
    Gate g;
    g.kind = kind;
    g.targets = std::move(targets);
    c.gates.push_back(g);
}

}  // namespace mqec
