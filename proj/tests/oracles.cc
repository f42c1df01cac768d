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


#include "oracles.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace oracle {

namespace {

// Symplectic vector: bits 0..n-1 are X, n..2n-1 are Z.
uint64_t symp(const mqec::PauliString &p) {
    uint64_t v = 0;
    size_t n = p.num_qubits();
    for (size_t q = 0; q < n; q++) {
        v |= static_cast<uint64_t>(p.x(q)) << q;
        v |= static_cast<uint64_t>(p.z(q)) << (q + n);
    }
    return v;
}

bool commute(uint64_t a, uint64_t b, size_t n) {
    uint64_t mask = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    uint64_t ax = a & mask, az = (a >> n) & mask;
    uint64_t bx = b & mask, bz = (b >> n) & mask;
    return (__builtin_popcountll(ax & bz) + __builtin_popcountll(az & bx)) % 2 == 0;
}

struct Span {
    std::vector<uint64_t> rows;  // reduced echelon by leading bit
    void add(uint64_t v) {
        v = reduce(v);
        if (v) {
            rows.push_back(v);
        }
    }
    uint64_t reduce(uint64_t v) const {
        for (uint64_t r : rows) {
            uint64_t lead = uint64_t(1) << (63 - __builtin_clzll(r));
            if (v & lead) {
                v ^= r;
            }
        }
        return v;
    }
};

}  // namespace

int distance_by_membership(const mqec::StabilizerCode &code, int max_weight) {
    size_t n = code.n;
    if (2 * n > 64) {
        throw std::runtime_error("oracle: code too large");
    }
    std::vector<uint64_t> gens;
    for (const auto &s : code.stabilizers) {
        gens.push_back(symp(s));
    }
    // Echelon form with distinct leading bits, built by full reduction.
    Span span;
    for (uint64_t g : gens) {
        uint64_t v = span.reduce(g);
        if (!v) {
            continue;
        }
        uint64_t lead = uint64_t(1) << (63 - __builtin_clzll(v));
        for (auto &r : span.rows) {
            if (r & lead) {
                r ^= v;
            }
        }
        span.rows.push_back(v);
    }
    for (int w = 1; w <= max_weight; w++) {
        std::vector<int> pos(w);
        for (int i = 0; i < w; i++) {
            pos[i] = i;
        }
        while (true) {
            int combos = 1;
            for (int i = 0; i < w; i++) {
                combos *= 3;
            }
            for (int c = 0; c < combos; c++) {
                uint64_t v = 0;
                int cc = c;
                for (int i = 0; i < w; i++) {
                    int letter = cc % 3 + 1;  // 1 X, 2 Z, 3 Y
                    cc /= 3;
                    if (letter & 1) {
                        v |= uint64_t(1) << pos[i];
                    }
                    if (letter & 2) {
                        v |= uint64_t(1) << (pos[i] + n);
                    }
                }
                bool centralizes = true;
                for (uint64_t g : gens) {
                    if (!commute(v, g, n)) {
                        centralizes = false;
                        break;
                    }
                }
                if (centralizes && span.reduce(v) != 0) {
                    return w;
                }
            }
            int i = w - 1;
            while (i >= 0 && pos[i] == static_cast<int>(n) - w + i) {
                i--;
            }
            if (i < 0) {
                break;
            }
            pos[i]++;
            for (int j = i + 1; j < w; j++) {
                pos[j] = pos[j - 1] + 1;
            }
        }
    }
    return 0;
}

mqec::CodewordTable c4_reference_codewords() {
    return {
        {"00", {"0000", "1111"}},
        {"01", {"0011", "1100"}},
        {"10", {"0101", "1010"}},
        {"11", {"0110", "1001"}},
    };
}

std::vector<std::string> propagate_classical(const mqec::Circuit &c, const std::string &init) {
    std::vector<int> bit(c.num_qubits, 0);
    for (size_t i = 0; i < init.size() && i < bit.size(); i++) {
        bit[i] = init[i] == '1';
    }
    for (const auto &g : c.gates) {
        switch (g.kind) {
            case mqec::GateKind::X:
                bit[g.targets[0]] ^= 1;
                break;
            case mqec::GateKind::CX:
                bit[g.targets[1]] ^= bit[g.targets[0]];
                break;
            case mqec::GateKind::SWAP:
                std::swap(bit[g.targets[0]], bit[g.targets[1]]);
                break;
            case mqec::GateKind::Measure:
                break;
            default:
                throw std::runtime_error("oracle: non-classical gate " + std::string(mqec::gate_name(g.kind)));
        }
    }
    std::vector<std::string> out;
    for (const auto &w : c.readout.words) {
        std::string s;
        for (int q : w) {
            s.push_back(bit[q] ? '1' : '0');
        }
        out.push_back(s);
    }
    return out;
}

std::map<std::string, double> shor3_by_hand() {
    // H on q0: (|000> + |100>)/sqrt2, CX(0,1), CX(0,2): (|000> + |111>)/sqrt2.
    // Final H on q0: |000> -> (|000> + |100>)/sqrt2, |111> -> (|011> - |111>)/sqrt2.
    // Amplitudes 1/2 on 000, 100, 011 and -1/2 on 111; strings are q0 q1 q2.
    double a = 0.5;
    return {{"000", a * a}, {"100", a * a}, {"011", a * a}, {"111", a * a}};
}

double twirl_z_probability_dm(double theta) {
    using cplx = std::complex<double>;
    // Nearest quarter turn k; residual rotation delta = theta - k*pi/2.
    double k = std::round(theta / (std::numbers::pi / 2));
    double delta = theta - k * std::numbers::pi / 2;
    // The {I, Z} twirl of Rz(delta) is (1 - p) rho + p Z rho Z. Twirling preserves the overlap
    // of the output with |+>, and Z maps |+> to |->, so p = 1 - <+|Rz rho Rz^dag|+> for rho = |+><+|.
    cplx e0 = std::exp(cplx(0, -delta / 2)), e1 = std::exp(cplx(0, delta / 2));
    cplx rho[2][2] = {{0.5, 0.5}, {0.5, 0.5}};
    cplx out[2][2];
    cplx u[2] = {e0, e1};
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            out[i][j] = u[i] * rho[i][j] * std::conj(u[j]);
        }
    }
    double plus = std::real(0.5 * (out[0][0] + out[0][1] + out[1][0] + out[1][1]));
    return 1 - plus;
}

mqec::Circuit single_patch_identity() {
    mqec::Circuit c = mqec::make_logical("single_patch", 2);
    c.plan.encoded = true;
    c.plan.patch_rows = {2};
    c.plan.patch_prep = {mqec::PatchPrep::Flagged00};
    mqec::add_gate(c, mqec::GateKind::Measure, {0});
    mqec::add_gate(c, mqec::GateKind::Measure, {1});
    c.readout.words = {{0, 1}};
    return c;
}

double max_abs_diff(const std::map<std::string, double> &a, const std::map<std::string, double> &b) {
    double worst = 0;
    for (auto &[k, v] : a) {
        auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (auto &[k, v] : b) {
        if (!a.count(k)) {
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

}  // namespace oracle
