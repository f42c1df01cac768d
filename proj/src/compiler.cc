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

#include "mqec/compiler.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <set>

#include "mqec/analysis.h"
#include "mqec/builders.h"
#include "mqec/clifford.h"
#include "mqec/errors.h"
#include "mqec/statevector.h"

namespace mqec {

namespace {

const double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Encoding
// ---------------------------------------------------------------------------

void push(Circuit &c, GateKind k, std::vector<int> t) {
    Gate g;
    g.kind = k;
    g.targets = std::move(t);
    c.gates.push_back(std::move(g));
}

// Pauli frame on logical qubits, each component a set of atom readouts.
struct Frame {
    std::set<int> x, z;
};

void toggle(std::set<int> &dst, const std::set<int> &src) {
    for (int s : src) {
        if (!dst.erase(s)) {
            dst.insert(s);
        }
    }
}

Circuit encode_unencoded(const Circuit &L) {
    const EncodingPlan &plan = L.plan;
    if (static_cast<int>(plan.sites.size()) != L.num_qubits) {
        throw StructuralError("encode: unencoded plan needs one site per logical qubit");
    }
    Circuit P;
    P.name = L.name;
    P.tier = Tier::Physical;
    P.num_qubits = L.num_qubits;
    P.grid.rows = plan.grid_rows;
    P.grid.cols = plan.grid_cols;
    P.grid.atom_sites = plan.sites;
    P.roles = plan.logical_roles;
    P.roles.resize(L.num_qubits, Role::Data);
    for (int q = 0; q < L.num_qubits; q++) {
        push(P, GateKind::Prep, {q});
    }
    for (const Gate &g : L.gates) {
        if (g.kind == GateKind::SWAP) {
            throw UnsupportedError("encode: logical SWAP on an unencoded layout");
        }
        P.gates.push_back(g);
    }
    P.readout = L.readout;
    P.readout.logical.resize(L.num_qubits);
    for (int q = 0; q < L.num_qubits; q++) {
        P.readout.logical[q] = LogicalSource{};
        P.readout.logical[q].atom = q;
    }
    return P;
}

}  // namespace

Circuit encode(const Circuit &L) {
    if (L.tier != Tier::Logical) {
        throw UnsupportedError("encode: expected a logical-tier circuit");
    }
    auto bad = validate(L);
    if (!bad.empty()) {
        throw StructuralError("encode: invalid logical circuit: " + bad.front());
    }
    const EncodingPlan &plan = L.plan;
    if (!plan.encoded) {
        return encode_unencoded(L);
    }
    int np = static_cast<int>(plan.patch_rows.size());
    if (L.num_qubits != 2 * np || static_cast<int>(plan.patch_prep.size()) != np) {
        throw StructuralError("encode: encoded plan needs two logical qubits per patch");
    }
    Circuit P;
    P.name = L.name;
    P.tier = Tier::Physical;
    P.grid.rows = plan.grid_rows;
    P.grid.cols = plan.grid_cols;
    std::vector<std::array<int, 4>> pos(np);
    std::vector<int> flag(np, -1), row(np);
    for (int p = 0; p < np; p++) {
        row[p] = plan.patch_rows[p];
        for (int j = 0; j < 4; j++) {
            pos[p][j] = P.num_qubits++;
            P.grid.atom_sites.push_back({row[p], 1 + j});
            P.roles.push_back(Role::Data);
        }
        if (plan.patch_prep[p] != PatchPrep::Bell0Plus) {
            flag[p] = P.num_qubits++;
            P.grid.atom_sites.push_back({row[p], plan.grid_cols - 1});
            P.roles.push_back(plan.patch_prep[p] == PatchPrep::Flagged00 ? Role::PrepFlag : Role::Ancilla);
        }
    }
    for (int a = 0; a < P.num_qubits; a++) {
        push(P, GateKind::Prep, {a});
    }

    // Patch preparation, split around the single flag-column move.
    std::vector<int> flags;
    for (int p = 0; p < np; p++) {
        auto &d = pos[p];
        switch (plan.patch_prep[p]) {
            case PatchPrep::Flagged00:
                push(P, GateKind::H, {d[1]});
                push(P, GateKind::CX, {d[1], d[2]});
                push(P, GateKind::CX, {d[1], d[0]});
                push(P, GateKind::CX, {d[2], d[3]});
                push(P, GateKind::CX, {d[3], flag[p]});
                flags.push_back(flag[p]);
                break;
            case PatchPrep::Bell0Plus:
                push(P, GateKind::H, {d[0]});
                push(P, GateKind::CX, {d[0], d[1]});
                push(P, GateKind::H, {d[2]});
                push(P, GateKind::CX, {d[2], d[3]});
                break;
            case PatchPrep::FusedPlusPlus:
                push(P, GateKind::H, {d[0]});
                push(P, GateKind::CX, {d[0], d[1]});
                push(P, GateKind::H, {d[2]});
                push(P, GateKind::CX, {d[2], d[3]});
                push(P, GateKind::H, {flag[p]});
                push(P, GateKind::CX, {flag[p], d[3]});
                flags.push_back(flag[p]);
                break;
        }
    }
    if (!flags.empty()) {
        Gate mv;
        mv.kind = GateKind::Move;
        mv.targets = flags;
        mv.drow = 0;
        mv.dcol = -(plan.grid_cols - 1);
        P.gates.push_back(mv);
    }
    for (int p = 0; p < np; p++) {
        auto &d = pos[p];
        if (plan.patch_prep[p] == PatchPrep::Flagged00) {
            push(P, GateKind::CX, {d[0], flag[p]});
        } else if (plan.patch_prep[p] == PatchPrep::FusedPlusPlus) {
            push(P, GateKind::CX, {flag[p], d[0]});
            push(P, GateKind::H, {flag[p]});
        }
    }

    // Leading logical H gates absorbed by the patch preparation.
    std::vector<char> consumed(L.gates.size(), 0);
    std::vector<Frame> frame(L.num_qubits);
    auto patch_of = [](int q) { return q / 2; };
    auto touches = [&](const Gate &g, int p) {
        if (g.kind == GateKind::ClassicalCorrection) {
            return false;
        }
        for (int t : g.targets) {
            if (patch_of(t) == p) {
                return true;
            }
        }
        return false;
    };
    auto next_on = [&](size_t from, std::initializer_list<int> ps, int skip) {
        // skip-th unconsumed gate touching any patch in ps, at or after 'from'.
        for (size_t i = from; i < L.gates.size(); i++) {
            if (consumed[i]) {
                continue;
            }
            bool hit = false;
            for (int p : ps) {
                hit |= touches(L.gates[i], p);
            }
            if (hit) {
                if (skip == 0) {
                    return static_cast<int>(i);
                }
                skip--;
            }
        }
        return -1;
    };
    for (int p = 0; p < np; p++) {
        PatchPrep pp = plan.patch_prep[p];
        if (pp == PatchPrep::Flagged00) {
            continue;
        }
        int need = pp == PatchPrep::Bell0Plus ? 1 : 2;
        std::set<int> seen;
        for (int k = 0; k < need; k++) {
            int i = next_on(0, {p}, 0);
            if (i < 0 || L.gates[i].kind != GateKind::H) {
                throw StructuralError("encode: patch " + std::to_string(p) + " prep " + prep_name(pp) +
                                      " expects leading logical H gates");
            }
            seen.insert(L.gates[i].targets[0]);
            consumed[i] = 1;
        }
        if (pp == PatchPrep::Bell0Plus && !seen.count(2 * p + 1)) {
            throw StructuralError("encode: bell0plus prep absorbs H on label b only");
        }
        if (pp == PatchPrep::FusedPlusPlus) {
            if (seen.size() != 2) {
                throw StructuralError("encode: fusedplusplus prep absorbs H on both labels");
            }
            // Parity readout m leaves Z_a^m applied to |++>_L.
            frame[2 * p].z.insert(flag[p]);
        }
    }

    auto apply_frame = [&](const Gate &g) {
        const auto &t = g.targets;
        switch (g.kind) {
            case GateKind::H:
                std::swap(frame[t[0]].x, frame[t[0]].z);
                break;
            case GateKind::SWAP:
                std::swap(frame[t[0]], frame[t[1]]);
                break;
            case GateKind::CX:
                toggle(frame[t[1]].x, frame[t[0]].x);
                toggle(frame[t[0]].z, frame[t[1]].z);
                break;
            case GateKind::CZ:
                toggle(frame[t[1]].z, frame[t[0]].x);
                toggle(frame[t[0]].z, frame[t[1]].x);
                break;
            case GateKind::S:
            case GateKind::Sdg:
                toggle(frame[t[0]].z, frame[t[0]].x);
                break;
            default:
                break;
        }
    };

    std::vector<Gate> corrections;
    std::vector<char> measured(L.num_qubits, 0);
    for (size_t i = 0; i < L.gates.size(); i++) {
        if (consumed[i]) {
            continue;
        }
        const Gate &g = L.gates[i];
        consumed[i] = 1;
        const auto &t = g.targets;
        switch (g.kind) {
            case GateKind::H: {
                int p = patch_of(t[0]);
                int j1 = next_on(i + 1, {p}, 0), j2 = next_on(i + 1, {p}, 1);
                auto is_other_h = [&](int j) {
                    return j >= 0 && L.gates[j].kind == GateKind::H && L.gates[j].targets[0] != t[0];
                };
                auto is_swap = [&](int j) {
                    return j >= 0 && L.gates[j].kind == GateKind::SWAP && patch_of(L.gates[j].targets[0]) == p &&
                           patch_of(L.gates[j].targets[1]) == p;
                };
                if (!((is_other_h(j1) && is_swap(j2)) || (is_swap(j1) && is_other_h(j2)))) {
                    throw UnsupportedError("encode: logical H on patch " + std::to_string(p) +
                                           " must appear as H(a) H(b) SWAP(a,b), the transversal H");
                }
                consumed[j1] = consumed[j2] = 1;
                for (int j = 0; j < 4; j++) {
                    push(P, GateKind::H, {pos[p][j]});
                }
                apply_frame(g);
                apply_frame(L.gates[j1]);
                apply_frame(L.gates[j2]);
                break;
            }
            case GateKind::CX: {
                int pc = patch_of(t[0]), pt = patch_of(t[1]);
                int ic = t[0] % 2, it = t[1] % 2;
                if (pc == pt) {
                    // Intra-patch CX is a relabel of two data atoms.
                    if (ic == 0) {
                        std::swap(pos[pc][2], pos[pc][3]);
                    } else {
                        std::swap(pos[pc][1], pos[pc][3]);
                    }
                    apply_frame(g);
                    break;
                }
                if (ic != it) {
                    throw UnsupportedError("encode: inter-patch CX must pair equal labels");
                }
                int j = next_on(i + 1, {pc, pt}, 0);
                const int want_c = 2 * pc + (1 - ic), want_t = 2 * pt + (1 - it);
                if (j < 0 || L.gates[j].kind != GateKind::CX || L.gates[j].targets[0] != want_c ||
                    L.gates[j].targets[1] != want_t) {
                    throw UnsupportedError("encode: inter-patch CX needs its partner on the other label (transversal)");
                }
                if (std::abs(row[pc] - row[pt]) != 1) {
                    throw RoutingError("encode: patches " + std::to_string(pc) + " and " + std::to_string(pt) +
                                       " are not on adjacent rows");
                }
                for (int k = 0; k < 4; k++) {
                    if (P.grid.atom_sites[pos[pc][k]].col != P.grid.atom_sites[pos[pt][k]].col) {
                        throw RoutingError("encode: relabeled patches are no longer column aligned");
                    }
                }
                consumed[j] = 1;
                for (int k = 0; k < 4; k++) {
                    push(P, GateKind::CX, {pos[pc][k], pos[pt][k]});
                }
                apply_frame(g);
                apply_frame(L.gates[j]);
                break;
            }
            case GateKind::CZ: {
                int p = patch_of(t[0]);
                if (patch_of(t[1]) != p) {
                    throw UnsupportedError("encode: logical CZ across patches");
                }
                push(P, GateKind::S, {pos[p][0]});
                push(P, GateKind::Sdg, {pos[p][1]});
                push(P, GateKind::Sdg, {pos[p][2]});
                push(P, GateKind::S, {pos[p][3]});
                apply_frame(g);
                break;
            }
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z: {
                int p = patch_of(t[0]), idx = t[0] % 2;
                if (g.kind != GateKind::Z) {
                    for (int k : idx == 0 ? std::array<int, 2>{1, 3} : std::array<int, 2>{2, 3}) {
                        push(P, GateKind::X, {pos[p][k]});
                    }
                }
                if (g.kind != GateKind::X) {
                    for (int k : idx == 0 ? std::array<int, 2>{0, 1} : std::array<int, 2>{0, 2}) {
                        push(P, GateKind::Z, {pos[p][k]});
                    }
                }
                break;
            }
            case GateKind::SWAP: {
                int p = patch_of(t[0]);
                if (patch_of(t[1]) != p) {
                    throw UnsupportedError("encode: logical SWAP across patches");
                }
                std::swap(pos[p][1], pos[p][2]);
                apply_frame(g);
                break;
            }
            case GateKind::Move: {
                int p = patch_of(t[0]);
                if (t.size() != 2 || patch_of(t[1]) != p || g.dcol != 0) {
                    throw UnsupportedError("encode: logical move must carry a whole patch along a column");
                }
                Gate mv;
                mv.kind = GateKind::Move;
                mv.targets.assign(pos[p].begin(), pos[p].end());
                std::sort(mv.targets.begin(), mv.targets.end());
                mv.drow = g.drow;
                P.gates.push_back(mv);
                row[p] += g.drow;
                break;
            }
            case GateKind::Measure:
                for (int q : t) {
                    measured[q] = 1;
                    if (!frame[q].x.empty()) {
                        Gate cc;
                        cc.kind = GateKind::ClassicalCorrection;
                        cc.targets = {q};
                        cc.atom_sources.assign(frame[q].x.begin(), frame[q].x.end());
                        corrections.push_back(cc);
                    }
                }
                break;
            case GateKind::ClassicalCorrection:
                corrections.push_back(g);
                break;
            default:
                throw UnsupportedError(std::string("encode: logical gate ") + gate_name(g.kind) +
                                       " has no transversal implementation");
        }
    }
    std::vector<int> all(P.num_qubits);
    for (int a = 0; a < P.num_qubits; a++) {
        all[a] = a;
    }
    push(P, GateKind::Measure, all);
    for (auto &cc : corrections) {
        P.gates.push_back(cc);
    }

    P.readout.patches.resize(np);
    for (int p = 0; p < np; p++) {
        P.readout.patches[p].data = pos[p];
        P.readout.patches[p].flag = flag[p];
        if (plan.patch_prep[p] == PatchPrep::Flagged00) {
            P.readout.prep_flags.push_back(flag[p]);
        }
    }
    P.readout.logical.resize(L.num_qubits);
    for (int q = 0; q < L.num_qubits; q++) {
        LogicalSource s;
        s.kind = SourceKind::Patch;
        s.patch = q / 2;
        s.index = q % 2;
        P.readout.logical[q] = s;
    }
    P.readout.words = L.readout.words;
    P.readout.logical_flags = L.readout.logical_flags;
    return P;
}

namespace {

// ---------------------------------------------------------------------------
// Native synthesis
// ---------------------------------------------------------------------------

struct Segment {
    Mat2 ideal;  // single-qubit Clifford between consecutive CZ events
    CliffordClass cls = CliffordClass::D;
    bool pinned = false;
};

struct Node {
    bool is_move = false;
    std::vector<int> atoms;
    int gate = -1;  // source gate index
};

struct AtomLine {
    std::vector<Segment> segs;
    std::vector<int> nodes;  // CZ node ids in order
};

// Pulse-type bitmask over classes: bit 0 D, bit 1 X, bit 2 H.
int realizable(int h, int f) {
    if (h == 0) {
        return (f % 2 == 0) ? 1 : 2;
    }
    if (h == 1) {
        return 4;
    }
    return 7;
}

// Frames reachable after a segment.
int transition(const Segment &s, int h, int f, int fin) {
    int real = realizable(h, f);
    int out = 0;
    for (int e = 0; e < 2; e++) {
        if (!(fin >> e & 1)) {
            continue;
        }
        for (int e2 = 0; e2 < 2; e2++) {
            if (s.pinned) {
                if (e == e2 && (real & 2)) {
                    out |= 1 << e2;
                }
                continue;
            }
            int need;
            if (s.cls == CliffordClass::H) {
                need = 4;
            } else {
                bool xcls = (s.cls == CliffordClass::X) ^ (e != e2);
                need = xcls ? 2 : 1;
            }
            if (real & need) {
                out |= 1 << e2;
            }
        }
    }
    return out;
}

class StageSearch {
   public:
    StageSearch(const std::vector<AtomLine> &lines, const std::vector<Node> &nodes,
                const std::vector<std::vector<int>> &move_preds, const std::vector<std::vector<int>> &node_after_moves)
        : lines_(lines), nodes_(nodes), move_preds_(move_preds), node_after_moves_(node_after_moves) {
        cz_order_.clear();
        for (size_t i = 0; i < nodes_.size(); i++) {
            if (!nodes_[i].is_move) {
                cz_order_.push_back(static_cast<int>(i));
            }
        }
    }

    // Returns true and fills stage_ when the pattern admits a schedule.
    bool run(const std::vector<char> &pattern, long long budget) {
        T_ = static_cast<int>(pattern.size());
        ph_.assign(T_ + 1, 0);
        pf_.assign(T_ + 1, 0);
        for (int k = 0; k < T_; k++) {
            ph_[k + 1] = ph_[k] + (pattern[k] == 0);
            pf_[k + 1] = pf_[k] + (pattern[k] == 1);
        }
        size_t na = lines_.size();
        last_.assign(na, 0);
        frames_.assign(na, 1);
        seg_.assign(na, 0);
        stage_.assign(nodes_.size(), -1);
        budget_ = budget;
        for (size_t a = 0; a < na; a++) {
            if (lines_[a].nodes.empty()) {
                int out = transition(lines_[a].segs[0], ph_[T_], pf_[T_], 1);
                if (!(out & 1)) {
                    return false;
                }
            }
        }
        return dfs(0);
    }

    const std::vector<int> &stages() const { return stage_; }
    int pulses() const { return T_; }
    int h_between(int s1, int s2) const { return ph_[s2] - ph_[s1]; }
    int f_between(int s1, int s2) const { return pf_[s2] - pf_[s1]; }

   private:
    bool dfs(size_t k) {
        if (k == cz_order_.size()) {
            return true;
        }
        if (--budget_ < 0) {
            return false;
        }
        int n = cz_order_[k];
        int a = nodes_[n].atoms[0], b = nodes_[n].atoms[1];
        int lo = std::max(last_[a], last_[b]);
        for (int m : node_after_moves_[n]) {
            for (int pnode : move_preds_[m]) {
                lo = std::max(lo, stage_[pnode]);
            }
        }
        for (int s = lo; s <= T_; s++) {
            int fa = step(a, s);
            if (!fa) {
                continue;
            }
            int fb = step(b, s);
            if (!fb) {
                continue;
            }
            int sa = last_[a], sb = last_[b], ga = frames_[a], gb = frames_[b];
            last_[a] = last_[b] = s;
            frames_[a] = fa;
            frames_[b] = fb;
            seg_[a]++;
            seg_[b]++;
            stage_[n] = s;
            if (dfs(k + 1)) {
                return true;
            }
            seg_[a]--;
            seg_[b]--;
            last_[a] = sa;
            last_[b] = sb;
            frames_[a] = ga;
            frames_[b] = gb;
            stage_[n] = -1;
            if (budget_ < 0) {
                return false;
            }
        }
        return false;
    }

    // Frames after placing the atom's next CZ at stage s, or 0 if impossible.
    int step(int a, int s) const {
        const AtomLine &line = lines_[a];
        int j = seg_[a];
        int out = transition(line.segs[j], h_between(last_[a], s), f_between(last_[a], s), frames_[a]);
        if (!out) {
            return 0;
        }
        if (j + 1 == static_cast<int>(line.nodes.size())) {
            // Last CZ of this atom: the tail segment must end frame-free.
            int fin = transition(line.segs[j + 1], h_between(s, T_), f_between(s, T_), out);
            if (!(fin & 1)) {
                return 0;
            }
        }
        return out;
    }

    const std::vector<AtomLine> &lines_;
    const std::vector<Node> &nodes_;
    const std::vector<std::vector<int>> &move_preds_;
    const std::vector<std::vector<int>> &node_after_moves_;
    std::vector<int> cz_order_;
    int T_ = 0;
    std::vector<int> ph_, pf_;
    std::vector<int> last_, frames_, seg_, stage_;
    long long budget_ = 0;
};

// Canonical list of the 24 single-qubit Cliffords mod phase, for dedup in synthesis.
int clifford_key(const Mat2 &u, std::vector<Mat2> &table) {
    for (size_t i = 0; i < table.size(); i++) {
        if (table[i].equiv(u)) {
            return static_cast<int>(i);
        }
    }
    table.push_back(u);
    return static_cast<int>(table.size()) - 1;
}

// Finds quarter-turn Rz angles a_0..a_m around the pulses so that
// X^eout * R * X^ein * Din * C^-1 is diagonal. Returns that diagonal in *dout.
std::vector<int> synthesize_segment(const Mat2 &C, const std::vector<char> &pulses, int ein, const Mat2 &Din, int eout,
                                    Mat2 *dout) {
    static const Mat2 half = Mat2::gr(kPi / 2, 0), full = Mat2::gr(kPi, 0);
    Mat2 xin = ein ? Mat2::x() : Mat2::identity();
    Mat2 xout = eout ? Mat2::x() : Mat2::identity();
    Mat2 right = xin * Din * C.dagger();
    std::vector<Mat2> table;
    struct State {
        Mat2 m;
        int prev;
        int angle;
    };
    std::vector<std::vector<State>> layers(pulses.size() + 1);
    {
        std::set<int> seen;
        for (int a = 0; a < 4; a++) {
            Mat2 m = Mat2::rz(a * kPi / 2);
            if (seen.insert(clifford_key(m, table)).second) {
                layers[0].push_back({m, -1, a});
            }
        }
    }
    for (size_t k = 0; k < pulses.size(); k++) {
        std::set<int> seen;
        const Mat2 &p = pulses[k] ? full : half;
        for (size_t si = 0; si < layers[k].size(); si++) {
            for (int a = 0; a < 4; a++) {
                Mat2 m = Mat2::rz(a * kPi / 2) * p * layers[k][si].m;
                if (seen.insert(clifford_key(m, table)).second) {
                    layers[k + 1].push_back({m, static_cast<int>(si), a});
                }
            }
        }
    }
    const auto &last = layers.back();
    for (size_t si = 0; si < last.size(); si++) {
        Mat2 d = xout * last[si].m * right;
        if (d.is_diagonal()) {
            *dout = d;
            std::vector<int> angles(pulses.size() + 1);
            int idx = static_cast<int>(si);
            for (int k = static_cast<int>(pulses.size()); k >= 0; k--) {
                angles[k] = layers[k][idx].angle;
                idx = layers[k][idx].prev;
            }
            return angles;
        }
    }
    throw StructuralError("synthesize_native: segment synthesis failed");
}

double angle_of(int a) {
    switch (a & 3) {
        case 1:
            return kPi / 2;
        case 2:
            return kPi;
        case 3:
            return -kPi / 2;
    }
    return 0;
}

}  // namespace

Circuit synthesize_native(const Circuit &in, const CompileOptions &opts, CompileReport *report) {
    if (in.tier != Tier::Physical) {
        throw UnsupportedError("synthesize_native: expected a physical-tier circuit");
    }
    int na = in.num_qubits;
    std::vector<AtomLine> lines(na);
    for (auto &l : lines) {
        l.segs.push_back({});
    }
    std::vector<Node> nodes;
    std::vector<std::vector<int>> move_preds;        // per move: CZ nodes right before it on moved atoms
    std::vector<std::vector<int>> node_after_moves;  // per node: moves it must follow
    std::vector<int> pending_move(na, -1);           // per atom: move awaiting its first successor CZ
    std::vector<int> move_node_of;                   // per move index: node id
    std::vector<Gate> measures, corrections;
    std::vector<char> measured(na, 0);
    auto add_cz = [&](int a, int b, int gi) {
        int id = static_cast<int>(nodes.size());
        nodes.push_back({false, {a, b}, gi});
        node_after_moves.push_back({});
        for (int x : {a, b}) {
            lines[x].nodes.push_back(id);
            lines[x].segs.push_back({});
            if (pending_move[x] >= 0) {
                auto &v = node_after_moves[id];
                if (std::find(v.begin(), v.end(), pending_move[x]) == v.end()) {
                    v.push_back(pending_move[x]);
                }
                pending_move[x] = -1;
            }
        }
    };
    auto apply1 = [&](int a, const Mat2 &u) { lines[a].segs.back().ideal = u * lines[a].segs.back().ideal; };
    for (size_t gi = 0; gi < in.gates.size(); gi++) {
        const Gate &g = in.gates[gi];
        if (g.kind == GateKind::ClassicalCorrection) {
            corrections.push_back(g);
            continue;
        }
        if (g.kind == GateKind::Measure) {
            measures.push_back(g);
            for (int t : g.targets) {
                measured[t] = 1;
            }
            continue;
        }
        for (int t : g.targets) {
            if (measured[t]) {
                throw UnsupportedError("synthesize_native: mid-circuit measurement is not supported");
            }
        }
        const auto &t = g.targets;
        switch (g.kind) {
            case GateKind::Prep:
                break;
            case GateKind::H:
                apply1(t[0], Mat2::h());
                break;
            case GateKind::X:
                apply1(t[0], Mat2::x());
                break;
            case GateKind::Y:
                apply1(t[0], Mat2::y());
                break;
            case GateKind::Z:
                apply1(t[0], Mat2::z());
                break;
            case GateKind::S:
                apply1(t[0], Mat2::s());
                break;
            case GateKind::Sdg:
                apply1(t[0], Mat2::sdg());
                break;
            case GateKind::Rz:
                if (quarter_turns(g.theta) < 0) {
                    throw UnsupportedError("synthesize_native: non-Clifford Rz");
                }
                apply1(t[0], Mat2::rz(g.theta));
                break;
            case GateKind::CZ:
                add_cz(t[0], t[1], static_cast<int>(gi));
                break;
            case GateKind::CX:
                apply1(t[1], Mat2::h());
                add_cz(t[0], t[1], static_cast<int>(gi));
                apply1(t[1], Mat2::h());
                break;
            case GateKind::Move: {
                int m = static_cast<int>(move_preds.size());
                move_preds.push_back({});
                int id = static_cast<int>(nodes.size());
                nodes.push_back({true, t, static_cast<int>(gi)});
                node_after_moves.push_back({});
                move_node_of.push_back(id);
                for (int x : t) {
                    if (!lines[x].nodes.empty()) {
                        move_preds[m].push_back(lines[x].nodes.back());
                    }
                    pending_move[x] = m;
                }
                break;
            }
            default:
                throw UnsupportedError(std::string("synthesize_native: cannot lower ") + gate_name(g.kind));
        }
    }
    for (auto &l : lines) {
        for (size_t j = 0; j < l.segs.size(); j++) {
            Segment &s = l.segs[j];
            s.cls = clifford_class(s.ideal);
            s.pinned = s.cls == CliffordClass::X && j > 0 && j + 1 < l.segs.size();
        }
    }

    // Longest-path lower bound on the pulse count.
    int lb = 0;
    {
        auto w = [](const Segment &s, bool end_fixed) {
            if (s.cls == CliffordClass::H || s.pinned) {
                return 1;
            }
            return (end_fixed && s.cls == CliffordClass::X) ? 1 : 0;
        };
        std::vector<int> cur(na, 0), idx(na, 0);
        for (const Node &n : nodes) {
            if (n.is_move) {
                continue;
            }
            int d = 0;
            for (int x : n.atoms) {
                d = std::max(d, cur[x] + w(lines[x].segs[idx[x]], false));
            }
            for (int x : n.atoms) {
                cur[x] = d;
                idx[x]++;
            }
        }
        for (int a = 0; a < na; a++) {
            lb = std::max(lb, cur[a] + w(lines[a].segs.back(), lines[a].nodes.empty()));
        }
    }

    StageSearch search(lines, nodes, move_preds, node_after_moves);
    std::vector<char> pattern;
    bool found = false;
    long long tried = 0;
    for (int T = lb; T <= opts.max_pulses && !found; T++) {
        if (T > 20) {
            throw CapacityError("synthesize_native: pulse pattern search exceeds 20 pulses");
        }
        for (uint32_t bits = 0; bits < (1u << T) && !found; bits++) {
            pattern.assign(T, 0);
            for (int k = 0; k < T; k++) {
                pattern[k] = (bits >> k) & 1;
            }
            tried++;
            found = search.run(pattern, opts.node_budget);
        }
    }
    if (!found) {
        throw CapacityError("synthesize_native: no schedule within " + std::to_string(opts.max_pulses) + " pulses");
    }
    int T = search.pulses();
    std::vector<int> stage = search.stages();
    for (size_t m = 0; m < move_preds.size(); m++) {
        int s = 0;
        for (int p : move_preds[m]) {
            s = std::max(s, stage[p]);
        }
        stage[move_node_of[m]] = s;
    }

    // Frame choice per atom by backward DP over reachable sets.
    std::vector<std::vector<int>> seg_start(na), seg_end(na), efr(na);
    for (int a = 0; a < na; a++) {
        const AtomLine &l = lines[a];
        size_t ns = l.segs.size();
        seg_start[a].resize(ns);
        seg_end[a].resize(ns);
        for (size_t j = 0; j < ns; j++) {
            seg_start[a][j] = j == 0 ? 0 : stage[l.nodes[j - 1]];
            seg_end[a][j] = j + 1 == ns ? T : stage[l.nodes[j]];
        }
        std::vector<int> reach(ns + 1);
        reach[0] = 1;
        for (size_t j = 0; j < ns; j++) {
            reach[j + 1] = transition(l.segs[j], search.h_between(seg_start[a][j], seg_end[a][j]),
                                      search.f_between(seg_start[a][j], seg_end[a][j]), reach[j]);
        }
        if (!(reach[ns] & 1)) {
            throw StructuralError("synthesize_native: frame assignment failed");
        }
        efr[a].assign(ns + 1, 0);
        for (size_t j = ns; j-- > 0;) {
            int target = efr[a][j + 1];
            int h = search.h_between(seg_start[a][j], seg_end[a][j]);
            int f = search.f_between(seg_start[a][j], seg_end[a][j]);
            int pick = -1;
            for (int e = 0; e < 2 && pick < 0; e++) {
                if ((reach[j] >> e & 1) && (transition(l.segs[j], h, f, 1 << e) >> target & 1)) {
                    pick = e;
                }
            }
            if (pick < 0) {
                throw StructuralError("synthesize_native: frame backtrack failed");
            }
            efr[a][j] = pick;
        }
    }

    // Angle synthesis in stage order, tracking diagonal carries through CZs.
    std::vector<std::vector<std::vector<int>>> angles(na);
    for (int a = 0; a < na; a++) {
        angles[a].resize(lines[a].segs.size());
    }
    std::vector<Mat2> dcarry(na, Mat2::identity());
    std::vector<int> ecarry(na, 0), seg_idx(na, 0);
    auto pulses_between = [&](int s1, int s2) { return std::vector<char>(pattern.begin() + s1, pattern.begin() + s2); };
    auto close_segment = [&](int a) {
        int j = seg_idx[a];
        Mat2 dout;
        angles[a][j] = synthesize_segment(lines[a].segs[j].ideal, pulses_between(seg_start[a][j], seg_end[a][j]),
                                          efr[a][j], dcarry[a], efr[a][j + 1], &dout);
        dcarry[a] = dout;
        ecarry[a] = efr[a][j + 1];
        seg_idx[a]++;
    };
    std::vector<std::vector<int>> by_stage(T + 1);
    for (size_t n = 0; n < nodes.size(); n++) {
        by_stage[stage[n]].push_back(static_cast<int>(n));
    }
    for (int s = 0; s <= T; s++) {
        for (int n : by_stage[s]) {
            if (nodes[n].is_move) {
                continue;
            }
            int a = nodes[n].atoms[0], b = nodes[n].atoms[1];
            close_segment(a);
            close_segment(b);
            Mat2 za = ecarry[b] ? Mat2::z() : Mat2::identity();
            Mat2 zb = ecarry[a] ? Mat2::z() : Mat2::identity();
            dcarry[a] = za * dcarry[a];
            dcarry[b] = zb * dcarry[b];
        }
    }
    for (int a = 0; a < na; a++) {
        close_segment(a);
    }

    // Emission.
    Circuit out;
    out.name = in.name;
    out.tier = Tier::Physical;
    out.num_qubits = na;
    out.grid = in.grid;
    out.roles = in.roles;
    out.readout = in.readout;
    for (int a = 0; a < na; a++) {
        push(out, GateKind::Prep, {a});
    }
    std::vector<int> emit_seg(na, 0), emit_gap(na, 0);
    auto emit_gap_rz = [&](int a) {
        int j = emit_seg[a];
        int g = emit_gap[a];
        int ang = angles[a][j][g];
        if (ang & 3) {
            Gate rz;
            rz.kind = GateKind::Rz;
            rz.targets = {a};
            rz.theta = angle_of(ang);
            out.gates.push_back(rz);
        }
        emit_gap[a]++;
    };
    for (int s = 0; s <= T; s++) {
        for (int n : by_stage[s]) {
            const Node &nd = nodes[n];
            if (nd.is_move) {
                out.gates.push_back(in.gates[nd.gate]);
                continue;
            }
            for (int a : nd.atoms) {
                // The segment ending here has its final gap in this stage.
                emit_gap_rz(a);
                emit_seg[a]++;
                emit_gap[a] = 0;
            }
            push(out, GateKind::CZ, {nd.atoms[0], nd.atoms[1]});
        }
        for (int a = 0; a < na; a++) {
            if (s < T || emit_seg[a] + 1 == static_cast<int>(lines[a].segs.size())) {
                emit_gap_rz(a);
            }
        }
        if (s < T) {
            Gate gr;
            gr.kind = GateKind::GR;
            gr.theta = pattern[s] ? kPi : kPi / 2;
            gr.phi = 0;
            out.gates.push_back(gr);
        }
    }
    for (auto &m : measures) {
        out.gates.push_back(m);
    }
    for (auto &cc : corrections) {
        out.gates.push_back(cc);
    }
    if (report) {
        report->pulses = T;
        report->lower_bound = lb;
        report->pattern.clear();
        for (char p : pattern) {
            report->pattern.push_back(p ? 'f' : 'h');
        }
        report->patterns_tried = tried;
    }
    return out;
}

Circuit lower(const Circuit &c, const CompileOptions &opts, CompileReport *report) {
    Circuit phys = c.tier == Tier::Logical ? encode(c) : c;
    return synthesize_native(phys, opts, report);
}

bool verify_equivalence(const Circuit &logical, const Circuit &physical, double tol) {
    if (physical.num_qubits > 20) {
        throw CapacityError("verify_equivalence: " + std::to_string(physical.num_qubits) + " atoms exceeds 20");
    }
    auto ideal = logical_distribution(logical);
    auto got = accepted_distribution(physical, statevector_oracle(physical));
    if (got.accepted_probability < tol) {
        return false;
    }
    std::set<std::string> keys;
    for (auto &[k, v] : ideal) {
        keys.insert(k);
    }
    for (auto &[k, v] : got.distribution) {
        keys.insert(k);
    }
    for (const auto &k : keys) {
        double p = ideal.count(k) ? ideal.at(k) : 0.0;
        double q = got.distribution.count(k) ? got.distribution.at(k) : 0.0;
        if (std::abs(p - q) > tol) {
            return false;
        }
    }
    return true;
}

}  // namespace mqec
