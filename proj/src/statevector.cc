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

#include "mqec/statevector.h"

#include "mqec/errors.h"

namespace mqec {

StateVector::StateVector(int n) : n_(n) {
    if (n < 0 || n > 20) {
        throw CapacityError("statevector: " + std::to_string(n) + " qubits exceeds the 20-qubit cap");
    }
    amp_.assign(size_t(1) << n, cplx(0));
    amp_[0] = 1;
}

void StateVector::apply_1q(int q, const Mat2 &u) {
    size_t bit = size_t(1) << q;
    for (size_t i = 0; i < amp_.size(); i++) {
        if (i & bit) {
            continue;
        }
        cplx a0 = amp_[i], a1 = amp_[i | bit];
        amp_[i] = u.m[0] * a0 + u.m[1] * a1;
        amp_[i | bit] = u.m[2] * a0 + u.m[3] * a1;
    }
}

void StateVector::apply_cz(int a, int b) {
    size_t mask = (size_t(1) << a) | (size_t(1) << b);
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & mask) == mask) {
            amp_[i] = -amp_[i];
        }
    }
}

void StateVector::apply_cx(int c, int t) {
    size_t cb = size_t(1) << c, tb = size_t(1) << t;
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & cb) && !(i & tb)) {
            std::swap(amp_[i], amp_[i | tb]);
        }
    }
}

void StateVector::apply_swap(int a, int b) {
    size_t ab = size_t(1) << a, bb = size_t(1) << b;
    for (size_t i = 0; i < amp_.size(); i++) {
        if ((i & ab) && !(i & bb)) {
            std::swap(amp_[i], amp_[(i ^ ab) | bb]);
        }
    }
}

std::map<std::string, double> statevector_oracle(const Circuit &c, double cutoff) {
    if (c.num_qubits > 20) {
        throw CapacityError("statevector_oracle: " + std::to_string(c.num_qubits) + " qubits exceeds the 20-qubit cap");
    }
    StateVector sv(c.num_qubits);
    std::vector<char> touched(c.num_qubits, 0), measured(c.num_qubits, 0);
    std::vector<const Gate *> corrections;
    for (const Gate &g : c.gates) {
        const auto &t = g.targets;
        if (g.kind != GateKind::ClassicalCorrection && g.kind != GateKind::GR && g.kind != GateKind::Measure) {
            for (int q : t) {
                if (g.kind == GateKind::Prep && touched[q]) {
                    throw UnsupportedError("statevector_oracle: re-preparation of a used qubit");
                }
                touched[q] = 1;
            }
        }
        switch (g.kind) {
            case GateKind::Prep:
            case GateKind::Move:
                break;
            case GateKind::CZ:
                sv.apply_cz(t[0], t[1]);
                break;
            case GateKind::CX:
                sv.apply_cx(t[0], t[1]);
                break;
            case GateKind::SWAP:
                sv.apply_swap(t[0], t[1]);
                break;
            case GateKind::GR: {
                Mat2 u = Mat2::gr(g.theta, g.phi);
                for (int q = 0; q < c.num_qubits; q++) {
                    if (measured[q]) {
                        continue;
                    }
                    sv.apply_1q(q, u);
                }
                break;
            }
            case GateKind::Rz:
                sv.apply_1q(t[0], Mat2::rz(g.theta));
                break;
            case GateKind::H:
                sv.apply_1q(t[0], Mat2::h());
                break;
            case GateKind::X:
                sv.apply_1q(t[0], Mat2::x());
                break;
            case GateKind::Y:
                sv.apply_1q(t[0], Mat2::y());
                break;
            case GateKind::Z:
                sv.apply_1q(t[0], Mat2::z());
                break;
            case GateKind::S:
                sv.apply_1q(t[0], Mat2::s());
                break;
            case GateKind::Sdg:
                sv.apply_1q(t[0], Mat2::sdg());
                break;
            case GateKind::Measure:
                for (int q : t) {
                    measured[q] = 1;
                }
                break;
            case GateKind::ClassicalCorrection:
                corrections.push_back(&g);
                break;
        }
    }
    std::map<std::string, double> out;
    const auto &amp = sv.amplitudes();
    for (size_t i = 0; i < amp.size(); i++) {
        double p = std::norm(amp[i]);
        if (p < cutoff) {
            continue;
        }
        std::string key(c.num_qubits, '0');
        for (int q = 0; q < c.num_qubits; q++) {
            if (measured[q] && (i >> q & 1)) {
                key[q] = '1';
            }
        }
        if (c.tier == Tier::Logical) {
            for (const Gate *g : corrections) {
                int parity = 0;
                for (size_t k = 1; k < g->targets.size(); k++) {
                    parity ^= key[g->targets[k]] - '0';
                }
                if (parity) {
                    char &b = key[g->targets[0]];
                    b = b == '0' ? '1' : '0';
                }
            }
        }
        out[key] += p;
    }
    return out;
}

}  // namespace mqec
