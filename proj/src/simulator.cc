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

#include "mqec/simulator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <omp.h>

#include "mqec/clifford.h"
#include "mqec/errors.h"
#include "mqec/tableau.h"

namespace mqec {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct Rng {
    std::mt19937_64 g;
    explicit Rng(uint64_t s) : g(s) {}
    double uniform() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
    int bit() { return static_cast<int>(g() >> 63); }
    int below(int n) { return static_cast<int>(uniform() * n); }
};

// A single-qubit operation ready for the tableau, plus an optional twirl residual.
struct OneQubit {
    CliffordTable table;
    int residual = 0;  // letter code of the residual Pauli: 1 X, 2 Z, 3 Y
    double residual_p = 0;
};

OneQubit prepare_rz(double theta, bool twirl) {
    OneQubit op;
    int k = quarter_turns(theta);
    if (k < 0) {
        if (!twirl) {
            throw UnsupportedError("simulator: non-Clifford Rz with twirling disabled");
        }
        Twirl t = twirl_rz(theta);
        k = t.quarter_turns;
        op.residual = 2;
        op.residual_p = t.z_probability;
    }
    op.table = clifford_table(Mat2::rz(k * std::numbers::pi / 2));
    return op;
}

OneQubit prepare_gr(double theta, double phi, bool twirl) {
    OneQubit op;
    Mat2 u = Mat2::gr(theta, phi);
    if (is_clifford(u)) {
        op.table = clifford_table(u);
        return op;
    }
    int axis = quarter_turns(phi);
    if (!twirl || axis < 0) {
        throw UnsupportedError("simulator: non-Clifford GR needs twirling and an axis phi on a quarter turn");
    }
    // Rotation about a Pauli axis: nearest quarter turn plus a residual along the same axis.
    Twirl t = twirl_rz(theta);
    op.table = clifford_table(Mat2::gr(t.quarter_turns * std::numbers::pi / 2, phi));
    op.residual = (axis % 2 == 0) ? 1 : 3;
    op.residual_p = t.z_probability;
    return op;
}

struct Step {
    int gate;  // index in the input circuit
    bool end_of_moment;
    double moment_weight;
    std::vector<int> idle;  // atoms idle in this moment, filled at end_of_moment
};

struct Plan {
    std::vector<Step> steps;
    std::vector<OneQubit> ops;  // per gate, for GR and Rz
    std::vector<std::vector<const ForcedFault *>> faults_after;
    std::vector<const ForcedFault *> faults_before;
};

Plan make_plan(const Circuit &c, const NoiseModel &noise, const SimOptions &opts) {
    if (c.tier != Tier::Physical) {
        throw UnsupportedError("simulator: expected a physical-tier circuit");
    }
    if (c.num_qubits > 64) {
        throw CapacityError("simulator: " + std::to_string(c.num_qubits) + " atoms exceeds the 64-atom cap");
    }
    Plan plan;
    int n = c.num_qubits;
    size_t ng = c.gates.size();
    std::vector<int> moment(ng, 0), last(n, -1);
    int depth = 0;
    for (size_t i = 0; i < ng; i++) {
        auto ops = gate_operands(c, c.gates[i]);
        int m = 0;
        for (int q : ops) {
            m = std::max(m, last[q] + 1);
        }
        for (int q : ops) {
            last[q] = m;
        }
        moment[i] = m;
        depth = std::max(depth, m + 1);
    }
    std::vector<std::vector<int>> by_moment(depth);
    for (size_t i = 0; i < ng; i++) {
        by_moment[moment[i]].push_back(static_cast<int>(i));
    }
    std::vector<char> measured(n, 0);
    for (int m = 0; m < depth; m++) {
        std::vector<char> busy(n, 0);
        bool has_move = false;
        for (size_t k = 0; k < by_moment[m].size(); k++) {
            int gi = by_moment[m][k];
            const Gate &g = c.gates[gi];
            has_move |= g.kind == GateKind::Move;
            for (int q : gate_operands(c, g)) {
                busy[q] = 1;
            }
            plan.steps.push_back({gi, k + 1 == by_moment[m].size(), 1.0, {}});
        }
        Step &end = plan.steps.back();
        for (int gi : by_moment[m]) {
            if (c.gates[gi].kind == GateKind::Measure) {
                for (int q : c.gates[gi].targets) {
                    measured[q] = 1;
                }
            }
        }
        for (int q = 0; q < n; q++) {
            if (!busy[q] && !measured[q]) {
                end.idle.push_back(q);
            }
        }
        if (noise.idle_duration_weighted && has_move) {
            end.moment_weight = noise.move_duration;
        }
    }
    plan.ops.resize(ng);
    for (size_t i = 0; i < ng; i++) {
        const Gate &g = c.gates[i];
        if (g.kind == GateKind::Rz) {
            plan.ops[i] = prepare_rz(g.theta, noise.twirl);
        } else if (g.kind == GateKind::GR) {
            plan.ops[i] = prepare_gr(g.theta, g.phi, noise.twirl);
        }
    }
    plan.faults_after.resize(ng);
    for (const ForcedFault &f : opts.faults) {
        if (f.atom < 0 || f.atom >= n || f.gate < -1 || f.gate >= static_cast<int>(ng)) {
            throw ConfigError("simulator: forced fault out of range");
        }
        if (f.gate < 0) {
            plan.faults_before.push_back(&f);
        } else {
            plan.faults_after[f.gate].push_back(&f);
        }
    }
    return plan;
}

class Shot {
   public:
    Shot(const Circuit &c, const NoiseModel &noise, const Plan &plan, uint64_t seed)
        : c_(c), noise_(noise), plan_(plan), rng_(seed), tab_(c.num_qubits), occ_(c.num_qubits, Occupancy::InSubspace),
          out_(c.num_qubits, '0') {
        for (int i = 0; i < kNumChannels; i++) {
            p_[i] = noise.rate(static_cast<Channel>(i));
        }
    }

    ShotRecord run(uint64_t shot) {
        for (const ForcedFault *f : plan_.faults_before) {
            force(*f);
        }
        for (const Step &s : plan_.steps) {
            apply(s.gate);
            for (const ForcedFault *f : plan_.faults_after[s.gate]) {
                force(*f);
            }
            if (s.end_of_moment && p(Channel::IdleDephase) > 0) {
                double q = std::min(1.0, p(Channel::IdleDephase) * s.moment_weight);
                for (int a : s.idle) {
                    if (live(a) && rng_.uniform() < q) {
                        tab_.z(a);
                    }
                }
            }
        }
        ShotRecord r;
        r.shot = shot;
        r.outcome = out_;
        r.leaked_mask = leaked_mask_;
        return r;
    }

   private:
    double p(Channel ch) const { return p_[static_cast<int>(ch)]; }
    bool live(int a) const { return occ_[a] == Occupancy::InSubspace; }

    void pauli(int a, int letter) {
        if (!live(a)) {
            return;
        }
        if (letter == 1) {
            tab_.x(a);
        } else if (letter == 2) {
            tab_.z(a);
        } else if (letter == 3) {
            tab_.y(a);
        }
    }

    void leave_subspace(int a, Occupancy o) {
        if (occ_[a] == Occupancy::Lost) {
            return;
        }
        if (live(a)) {
            // Population outside the qubit subspace decoheres the atom.
            tab_.measure(a, rng_.bit());
        }
        occ_[a] = o;
    }

    void force(const ForcedFault &f) {
        if (f.probability < 1 && !(rng_.uniform() < f.probability)) {
            return;
        }
        switch (f.kind) {
            case FaultKind::X:
                pauli(f.atom, 1);
                break;
            case FaultKind::Z:
                pauli(f.atom, 2);
                break;
            case FaultKind::Y:
                pauli(f.atom, 3);
                break;
            case FaultKind::LeakA:
                if (live(f.atom)) {
                    leave_subspace(f.atom, Occupancy::LeakedA);
                }
                break;
            case FaultKind::LeakB:
                if (live(f.atom)) {
                    leave_subspace(f.atom, Occupancy::LeakedB);
                }
                break;
            case FaultKind::Loss:
                leave_subspace(f.atom, Occupancy::Lost);
                break;
        }
    }

    void one(int a, const OneQubit &op) {
        if (!live(a)) {
            return;
        }
        tab_.apply(a, op.table);
        if (op.residual && op.residual_p > 0 && rng_.uniform() < op.residual_p) {
            pauli(a, op.residual);
        }
    }

    void apply(int gi) {
        const Gate &g = c_.gates[gi];
        const auto &t = g.targets;
        switch (g.kind) {
            case GateKind::Prep:
                for (int a : t) {
                    if (p(Channel::PrepFlip) > 0 && rng_.uniform() < p(Channel::PrepFlip)) {
                        pauli(a, 1);
                    }
                }
                break;
            case GateKind::CZ:
                cz_noisy(t[0], t[1]);
                break;
            case GateKind::GR:
                for (int a = 0; a < c_.num_qubits; a++) {
                    if (!live(a) || measured(a)) {
                        continue;
                    }
                    one(a, plan_.ops[gi]);
                    if (p(Channel::GrPauli) > 0 && rng_.uniform() < p(Channel::GrPauli)) {
                        pauli(a, 1 + rng_.below(3));
                    }
                }
                break;
            case GateKind::Rz:
                one(t[0], plan_.ops[gi]);
                if (p(Channel::RzDephase) > 0 && rng_.uniform() < p(Channel::RzDephase)) {
                    pauli(t[0], 2);
                }
                break;
            case GateKind::Move:
                for (int a : t) {
                    if (p(Channel::MovePhase) > 0 && rng_.uniform() < p(Channel::MovePhase)) {
                        pauli(a, 2);
                    }
                }
                break;
            case GateKind::Measure:
                for (int a : t) {
                    measure(a);
                }
                break;
            case GateKind::ClassicalCorrection:
                break;
            // Pre-compilation gates run noiselessly; noise channels attach to native gates.
            case GateKind::CX:
                if (live(t[0]) && live(t[1])) {
                    tab_.cx(t[0], t[1]);
                }
                break;
            case GateKind::SWAP:
                if (live(t[0]) && live(t[1])) {
                    tab_.cx(t[0], t[1]);
                    tab_.cx(t[1], t[0]);
                    tab_.cx(t[0], t[1]);
                }
                break;
            case GateKind::H:
                if (live(t[0])) {
                    tab_.h(t[0]);
                }
                break;
            case GateKind::S:
                if (live(t[0])) {
                    tab_.s(t[0]);
                }
                break;
            case GateKind::Sdg:
                if (live(t[0])) {
                    tab_.s(t[0]);
                    tab_.z(t[0]);
                }
                break;
            case GateKind::X:
                pauli(t[0], 1);
                break;
            case GateKind::Z:
                pauli(t[0], 2);
                break;
            case GateKind::Y:
                pauli(t[0], 3);
                break;
        }
    }

    bool measured(int a) const { return done_.size() > static_cast<size_t>(a) && done_[a]; }

    void cz_noisy(int a, int b) {
        if (live(a) && live(b)) {
            tab_.cz(a, b);
        }
        double pp = p(Channel::CzPauli), pl = p(Channel::CzLeak), px = p(Channel::CzLoss);
        if (pp + pl + px <= 0) {
            return;
        }
        double u = rng_.uniform();
        if (u < pp) {
            int k = 1 + rng_.below(15);
            pauli(a, k & 3);
            pauli(b, k >> 2);
        } else if (u < pp + pl) {
            int who = rng_.bit() ? b : a;
            if (live(who)) {
                leave_subspace(who, rng_.bit() ? Occupancy::LeakedB : Occupancy::LeakedA);
            }
        } else if (u < pp + pl + px) {
            leave_subspace(rng_.bit() ? b : a, Occupancy::Lost);
        }
    }

    void measure(int a) {
        if (done_.empty()) {
            done_.assign(c_.num_qubits, 0);
        }
        done_[a] = 1;
        if (occ_[a] != Occupancy::InSubspace && a < 64) {
            leaked_mask_ |= uint64_t(1) << a;
        }
        switch (occ_[a]) {
            case Occupancy::Lost:
                out_[a] = 'L';
                return;
            case Occupancy::LeakedA:
                out_[a] = static_cast<char>('0' + noise_.leak_readout[0]);
                return;
            case Occupancy::LeakedB:
                out_[a] = static_cast<char>('0' + noise_.leak_readout[1]);
                return;
            case Occupancy::InSubspace:
                break;
        }
        int bit = tab_.measure(a, rng_.bit());
        if (p(Channel::MeasLoss) > 0 && rng_.uniform() < p(Channel::MeasLoss)) {
            occ_[a] = Occupancy::Lost;
            out_[a] = 'L';
            return;
        }
        if (p(Channel::MeasFlip) > 0 && rng_.uniform() < p(Channel::MeasFlip)) {
            bit ^= 1;
        }
        out_[a] = static_cast<char>('0' + bit);
    }

    const Circuit &c_;
    const NoiseModel &noise_;
    const Plan &plan_;
    Rng rng_;
    Tableau tab_;
    std::vector<Occupancy> occ_;
    std::vector<char> done_;
    std::string out_;
    uint64_t leaked_mask_ = 0;
    double p_[kNumChannels];
};

std::vector<ShotRecord> run(const Circuit &c, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                            const SimOptions &opts, bool parallel) {
    Plan plan = make_plan(c, noise, opts);
    std::vector<ShotRecord> out(shots);
    long long n = static_cast<long long>(shots);
    if (parallel) {
        int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long long s = 0; s < n; s++) {
            Shot shot(c, noise, plan, shot_seed(seed, s));
            out[s] = shot.run(s);
        }
    } else {
        for (long long s = 0; s < n; s++) {
            Shot shot(c, noise, plan, shot_seed(seed, s));
            out[s] = shot.run(s);
        }
    }
    return out;
}

void branch(Tableau &tab, const std::vector<int> &atoms, size_t k, std::string &bits, double p,
            std::map<std::string, double> &out) {
    for (; k < atoms.size(); k++) {
        int a = atoms[k];
        if (!tab.is_deterministic(a)) {
            Tableau other = tab;
            std::string bits1 = bits;
            bits1[a] = static_cast<char>('0' + other.measure(a, 1));
            branch(other, atoms, k + 1, bits1, p / 2, out);
            bits[a] = static_cast<char>('0' + tab.measure(a, 0));
            p /= 2;
            continue;
        }
        bits[a] = static_cast<char>('0' + tab.measure(a, 0));
    }
    out[bits] += p;
}

}  // namespace

uint64_t shot_seed(uint64_t seed, uint64_t shot) {
    return splitmix64(seed ^ splitmix64(shot + 0x51ed270b27a4d6c5ULL));
}

std::vector<ShotRecord> run_shots(const Circuit &c, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                                  const SimOptions &opts) {
    return run(c, noise, shots, seed, opts, opts.parallel);
}

std::vector<ShotRecord> run_shots_serial(const Circuit &c, const NoiseModel &noise, uint64_t shots, uint64_t seed,
                                         const SimOptions &opts) {
    return run(c, noise, shots, seed, opts, false);
}

std::map<std::string, double> tableau_distribution(const Circuit &c) {
    if (c.tier != Tier::Physical) {
        throw UnsupportedError("tableau_distribution: expected a physical-tier circuit");
    }
    Tableau tab(c.num_qubits);
    std::vector<int> atoms;
    for (const Gate &g : c.gates) {
        const auto &t = g.targets;
        switch (g.kind) {
            case GateKind::Prep:
            case GateKind::Move:
            case GateKind::ClassicalCorrection:
                break;
            case GateKind::CZ:
                tab.cz(t[0], t[1]);
                break;
            case GateKind::CX:
                tab.cx(t[0], t[1]);
                break;
            case GateKind::SWAP:
                tab.cx(t[0], t[1]);
                tab.cx(t[1], t[0]);
                tab.cx(t[0], t[1]);
                break;
            case GateKind::H:
                tab.h(t[0]);
                break;
            case GateKind::S:
                tab.s(t[0]);
                break;
            case GateKind::Sdg:
                tab.s(t[0]);
                tab.z(t[0]);
                break;
            case GateKind::X:
                tab.x(t[0]);
                break;
            case GateKind::Y:
                tab.y(t[0]);
                break;
            case GateKind::Z:
                tab.z(t[0]);
                break;
            case GateKind::Rz: {
                OneQubit op = prepare_rz(g.theta, false);
                tab.apply(t[0], op.table);
                break;
            }
            case GateKind::GR: {
                OneQubit op = prepare_gr(g.theta, g.phi, false);
                for (int a = 0; a < c.num_qubits; a++) {
                    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) {
                        tab.apply(a, op.table);
                    }
                }
                break;
            }
            case GateKind::Measure:
                atoms.insert(atoms.end(), t.begin(), t.end());
                break;
        }
    }
    std::map<std::string, double> out;
    std::string bits(c.num_qubits, '0');
    branch(tab, atoms, 0, bits, 1.0, out);
    return out;
}

}  // namespace mqec
